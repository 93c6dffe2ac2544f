"""
Catálogo de álgebras con nombre: constructores y verificación contra fixtures.

Cada entrada sabe construir su porción graduada (``construct``) y, si tiene
fixture en ``fixtures/``, compararla con los datos esperados (``verify``).
"""

import inspect
import json
import logging
from dataclasses import dataclass, field as dc_field, replace
from functools import lru_cache
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from ..core.char2 import check_superalgebra_axioms, ideal_probe
from ..core.coeff import GroundField
from ..core.distrib import algebraic_growth, flag
from ..core.graded import validate_w_grading
from ..core.models import (
    GrowthVector, ParseError, SuperDim, UnknownEntryError, UnsupportedEntryError,
    VerifyReport, VerifyStatus, WorkbenchConfig,
)
from ..core.prolong import ProlongSeed, prolong
from . import realizations as R

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).parent / "fixtures"


@dataclass(frozen=True)
class CatalogEntry:
    """Entrada del catálogo: familia, característica exigida y receta de construcción."""
    name: str
    family: str
    builder: Optional[Callable[..., R.Realization]]
    p: Optional[int] = None
    params: Dict[str, object] = dc_field(default_factory=dict)
    truncation: int = 0
    description: str = ""
    experimental: bool = False

    @property
    def reference_only(self) -> bool:
        return self.builder is None


def _entries() -> List[CatalogEntry]:
    out = []
    for key, label in (
        ("vle43-1", "vle(4|3; 1)"), ("vle43-K", "vle(4|3; K)"), ("kle96", "kle(9|6)"),
        ("kle96-2", "kle(9|6; 2)"), ("kle96-K", "kle(9|6; K)"), ("kas", "kas"),
        ("kas-1xi", "kas(;1xi)"), ("mb45", "mb(4|5)"), ("mb45-1", "mb(4|5; 1)"), ("mb45-K", "mb(4|5; K)"),
    ):
        out.append(CatalogEntry(key, "excepcional", R.build_exceptional, None, {"key": key}, -1,
                                f"parte negativa de {label}"))
        out.append(CatalogEntry(f"F-{key}", "desuperizada", R.build_desuperized, 2, {"key": key}, -1,
                                f"F({label})_-"))
    out += [
        CatalogEntry("kle96-CK", "excepcional", R.build_exceptional, None, {"key": "kle96-CK"}, -1,
                     "parte negativa de kle(9|6; CK)"),
        CatalogEntry("F-kle96-CK", "desuperizada", R.build_desuperized, 2, {"key": "kle96-CK"}, -1, "F(kle(9|6; CK))_-"),
        CatalogEntry("s-F-vle43", "superizada", R.build_depth_one_superization, 2, {"d": 7}, -1, "s(F vle(4|3))"),
        CatalogEntry("s-F-vas44", "superizada", R.build_depth_one_superization, 2, {"d": 8}, -1, "s(F vas(4|4))"),
        CatalogEntry("s-F-kas-3xi", "superizada", R.build_depth_one_superization, 2, {"d": 8}, -1, "s(F kas(;3xi))"),
        CatalogEntry("s-F-kas-3eta", "superizada", R.build_depth_one_superization, 2, {"d": 7}, -1, "s(F kas(;3eta))"),
        CatalogEntry("s-F-ksle9-11", "superizada", R.build_ksle_superization, 2, {}, -1, "s(F ksle(9|11; CK))"),
        CatalogEntry("s-F-mb38", "superizada", R.build_mb38_superization, 2, {}, -1, "s(F mb(3|8))"),
        CatalogEntry("me", "melikyan", R.build_melikyan, 5, {"grading": "standard"}, 1, "me en k(5)"),
        CatalogEntry("3me", "melikyan", R.build_melikyan, 5, {"grading": "3me"}, 1, "me con graduación de profundidad 3"),
        CatalogEntry("me-p2", "melikyan", R.build_melikyan, 5, {"grading": "p2"}, 0, "me(;p2)"),
        CatalogEntry("fr", "frank", R.build_frank, 3, {"n": 1}, 5, "álgebra de Frank fr(n)"),
        CatalogEntry("tilde-fr", "frank", R.build_tilde_frank, 3, {}, 0, "fr(1) regraduada"),
        CatalogEntry("er", "ermolaev", R.build_ermolaev, 3, {}, 4, "álgebra de Ermolaev"),
        CatalogEntry("dy10", "skryabin", R.build_dy10, 3, {}, 0, "dy(10)"),
        CatalogEntry("s-dy10", "skryabin", R.build_sdy10, 3, {}, 0, "s-dy(10), campos sin divergencia"),
        CatalogEntry("dy11", "skryabin", R.build_dy11, 3, {}, 0, "dy(11)"),
        CatalogEntry("dy9", "skryabin", R.build_dy9, 3, {}, 0, "dy(9) en k(9)"),
        CatalogEntry("s-dy9", "skryabin", R.build_sdy9, 3, {}, 0, "s-dy(9) en k(9)"),
        CatalogEntry("my6", "skryabin", R.build_my6, 3, {}, 0, "my(6)"),
        CatalogEntry("my7", "skryabin", R.build_my7, 3, {}, 0, "my(7) en k(7)"),
        CatalogEntry("by7", "skryabin", R.build_by7, 3, {}, 0, "by(7)"),
        CatalogEntry("by8", "skryabin", R.build_by8, 3, {}, 0, "by(8)"),
        CatalogEntry("Me33", "melikyan-super", R.build_me_super, 3, {"grading": "Me(3|3)"}, 1, "Me(3;N|3)"),
        CatalogEntry("Me34", "melikyan-super", R.build_me_super, 3, {"grading": "Me(3|4)"}, 1, "Me(3;N|4)"),
        CatalogEntry("Me43", "melikyan-super", R.build_me_super, 3, {"grading": "Me(4|3)"}, 1, "Me(4;N|3)"),
        CatalogEntry("Bj", "bouarroudj", R.build_bj, 3, {}, 3, "Bj en k(3|2)"),
        CatalogEntry("Bj33", "bouarroudj", R.build_bj_regraded, 3, {"tilde": False}, 1, "Bj(3;N|3)"),
        CatalogEntry("tilde-Bj", "bouarroudj", R.build_bj_regraded, 3, {"tilde": True}, 1, "tilde-Bj"),
        CatalogEntry("remBj", "bouarroudj", R.build_rem_bj, 3, {"xi": False}, 2, "prolongación parcial con W_eta"),
        CatalogEntry("remBj-xi", "bouarroudj", R.build_rem_bj, 3, {"xi": True}, 2, "prolongación parcial con W_xi"),
        CatalogEntry("Bj17", "bouarroudj", R.build_bj17, 3, {}, 1, "Bj(1;N|7)"),
        CatalogEntry("Bj45", "bouarroudj", R.build_bj45, 3, {}, 0, "Bj(4;N|5)"),
        CatalogEntry("q-vect1", "queer", R.build_queer, 2, {"n": 1, "height": 1}, 0, "q(vect(1;1))"),
        CatalogEntry("qt-vect1-2", "queer", R.build_queer, 2, {"n": 1, "height": 2}, 2, "q~(vect(1;2))"),
        CatalogEntry("q-vect2", "queer", R.build_queer, 2, {"n": 2, "height": 1}, 1, "q(vect(2;(1,1)))"),
        CatalogEntry("k", "serie", R.build_contact_series, None, {"n": 1, "m": 0, "r": 0}, 1, "k(2n+1|m; r)", True),
        CatalogEntry("m", "serie", R.build_pericontact_series, None, {"n": 2, "r": 0}, 1, "m(n; r)", True),
        CatalogEntry("po", "serie", R.build_po, None, {"n": 1, "m": 0}, 1, "po(2n|m)", True),
        CatalogEntry("h", "serie", R.build_h, None, {"n": 1, "m": 0}, 1, "h(2n|m)", True),
        CatalogEntry("svect", "serie", R.build_svect, None, {"n": 2}, 1, "svect(n)", True),
        CatalogEntry("le", "serie", R.build_le, None, {"n": 2}, 1, "le(n)", True),
        CatalogEntry("b_ab", "serie", R.build_b_ab, None, {"n": 2, "a": 1, "b": 1}, 1, "b_{a,b}(n)", True),
    ]
    return out


CATALOG: Dict[str, CatalogEntry] = {entry.name: entry for entry in _entries()}


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError as e:
        raise UnknownEntryError(f"Entrada desconocida: {name!r}") from e


# =============================================
# CONSTRUCCIÓN
# =============================================

def construct(
    name: str,
    p: Optional[int] = None,
    truncation: Optional[int] = None,
    config: Optional[WorkbenchConfig] = None,
    **params,
) -> R.Realization:
    """Construye la entrada ``name`` hasta ``truncation`` (por defecto la de la entrada)."""
    entry = get_entry(name)
    if entry.reference_only:
        raise UnsupportedEntryError(f"{name}: sólo hay datos de referencia, no una construcción")
    if entry.p is not None and p is not None and p != entry.p:
        raise UnsupportedEntryError(f"{name} sólo está definida con p = {entry.p} (recibido p = {p})")
    if p is None:
        p = entry.p if entry.p is not None else (config.p if config else 0)
    config = config or WorkbenchConfig(p=p)
    truncation = entry.truncation if truncation is None else truncation
    kwargs = {**entry.params, **{k: v for k, v in params.items() if v is not None}}
    accepted = inspect.signature(entry.builder).parameters
    unknown = sorted(k for k in kwargs if k not in accepted)
    if unknown:
        raise ParseError(f"{name} no admite los parámetros {unknown}")
    logger.info(f"Construyendo {name} (p = {p}, truncación {truncation})")
    return entry.builder(GroundField(p), truncation, config=config, **kwargs)


@lru_cache(maxsize=32)
def _cached(name: str, p: Optional[int], truncation: Optional[int], params: Tuple) -> R.Realization:
    return construct(name, p, truncation, **dict(params))


# =============================================
# FIXTURES
# =============================================

def fixture_names() -> List[str]:
    return sorted(path.stem for path in FIXTURE_DIR.glob("*.json"))


def load_fixture(name: str) -> dict:
    path = FIXTURE_DIR / f"{name}.json"
    if not path.exists():
        raise UnsupportedEntryError(f"{name} no tiene fixture")
    with path.open(encoding="utf-8") as handle:
        return json.load(handle)


def _matches_filter(fixture: dict, text: Optional[str]) -> bool:
    """
    Filtros de verify-all.

    Formatos soportados:
    - "p=3"
    - "family=skryabin"
    - "name=me"
    """
    if not text:
        return True
    for part in text.split(","):
        key, _, value = part.partition("=")
        key, value = key.strip(), value.strip()
        if key == "p" and str(fixture.get("params", {}).get("p")) != value:
            return False
        if key == "family" and get_entry(fixture["name"]).family != value:
            return False
        if key == "name" and fixture["name"] != value:
            return False
    return True


def _same_growth(expected: GrowthVector, computed: GrowthVector) -> bool:
    if expected.contact != computed.contact:
        return False
    if expected.is_super:
        return expected.entries == computed.entries
    return expected.totals() == computed.totals()


def _same_dim(expected: str, computed: SuperDim) -> bool:
    value = SuperDim.parse(expected)
    return value == computed if "|" in expected else value.total == computed.total


def _growth(real: R.Realization, source: str) -> Optional[GrowthVector]:
    if source == "flag":
        return flag(real.flag_fields)
    if source == "algebraic":
        growth = algebraic_growth(real.slice.negative())
        # marca C heredada: la regraduación preserva una distribución de contacto
        if real.slice.metadata.get("contact_provenance"):
            growth = replace(growth, contact=True)
        return growth
    return None


def _reference_diffs(fixture: dict) -> List[str]:
    """Coherencia interna de un fixture de referencia: crecimiento frente a dimensiones."""
    diffs = []
    growth = GrowthVector.parse(fixture["growth"])
    totals = growth.totals()
    if any(b < a for a, b in zip(totals, totals[1:])):
        diffs.append(f"crecimiento no monótono: {growth}")
    dims = fixture.get("dims")
    if dims:
        running = SuperDim()
        cumulative = []
        for d in sorted((int(k) for k in dims), reverse=True):
            running = running + SuperDim.parse(dims[str(d)])
            cumulative.append(running)
        if tuple(c.total for c in cumulative) != totals:
            diffs.append(f"dimensiones {dims} no suman {growth}")
    return diffs


def cross_engine(real: R.Realization, up_to: int) -> Dict[int, bool]:
    """Compara las componentes positivas del filtro de ecuaciones con la prolongación completa."""
    g = real.slice
    seed = ProlongSeed(g.restricted(hi=-1), g.basis(0))
    full = prolong(seed, real.ambient, up_to, label=f"{g.label} (prolongación)")
    return {k: full.component(k).same_as(g.component(k)) for k in range(1, up_to + 1)}


def verify(name: str, truncation: Optional[int] = None, config: Optional[WorkbenchConfig] = None) -> VerifyReport:
    """Construye la entrada y compara dimensiones, crecimiento y comprobaciones con su fixture."""
    fixture = load_fixture(name)
    status = VerifyStatus(fixture.get("status", "pass"))
    report = VerifyReport(name, status, citation=fixture.get("citation", ""), expected=fixture)
    if status == VerifyStatus.REFERENCE:
        report.diffs = _reference_diffs(fixture)
        report.notes.append("datos de referencia: no hay construcción explícita")
        if report.diffs:
            report.status = VerifyStatus.FAIL
        return report

    params = dict(fixture.get("params", {}))
    p = params.pop("p", None)
    truncation = fixture.get("truncation") if truncation is None else truncation
    real = construct(name, p, truncation, config, **params)
    g = real.slice
    computed: Dict[str, object] = {"dims": {str(d): str(v) for d, v in g.dims.items()}, "depth": g.depth}
    diffs: List[str] = []

    for degree, text in fixture.get("dims", {}).items():
        got = g.sdim(int(degree))
        if not _same_dim(text, got):
            diffs.append(f"dim g_{degree}: esperado {text}, calculado {got}")

    if "depth" in fixture and fixture["depth"] != g.depth:
        diffs.append(f"profundidad: esperada {fixture['depth']}, calculada {g.depth}")

    deviation = False
    if fixture.get("growth"):
        growth = _growth(real, fixture.get("growth_source", "algebraic"))
        computed["growth"] = str(growth)
        expected = GrowthVector.parse(fixture["growth"])
        if not _same_growth(expected, growth):
            known = fixture.get("known_deviation", {}).get("growth")
            if known and _same_growth(GrowthVector.parse(known), growth):
                deviation = True
                report.notes.append(f"desviación documentada: {fixture['known_deviation'].get('reason', '')}")
            else:
                diffs.append(f"crecimiento: esperado {expected}, calculado {growth}")
        printed = fixture.get("printed_growth")
        if printed and GrowthVector.parse(printed).totals() != growth.totals():
            diffs.append(f"crecimiento publicado {printed}: totales distintos de {growth}")
        elif printed:
            report.notes.append(f"vector publicado {printed}: mismos totales, paridades recalculadas")

    if "w_grading" in fixture or "irreducibility" in fixture:
        w = validate_w_grading(g, config)
        computed["w_grading"] = w.to_dict()
        if "w_grading" in fixture and w.is_w_grading != fixture["w_grading"]:
            diffs.append(f"W-graduación: esperado {fixture['w_grading']}, calculado {w.is_w_grading}")
        if "irreducibility" in fixture and w.irreducible_gm1.value != fixture["irreducibility"]:
            diffs.append(f"irreducibilidad: esperada {fixture['irreducibility']}, calculada {w.irreducible_gm1.value}")

    if fixture.get("closure"):
        defects = g.closure_defects()
        if defects:
            diffs.append(f"no cerrada por el corchete en {defects}")

    for key, value in fixture.get("checks", {}).items():
        got = real.checks.get(key)
        computed[key] = got
        if got != value:
            diffs.append(f"{key}: esperado {value}, calculado {got}")

    if fixture.get("cross_engine"):
        agreement = cross_engine(real, g.truncated_at)
        computed["cross_engine"] = {str(k): v for k, v in agreement.items()}
        for k, same in agreement.items():
            if not same:
                diffs.append(f"grado {k}: ecuaciones y prolongación no coinciden")

    if "ideal" in fixture:
        probe = ideal_probe(g, config)
        computed["ideal"] = probe.verdict
        if probe.found != (fixture["ideal"] == "found"):
            diffs.append(f"ideal: esperado {fixture['ideal']}, calculado {probe.verdict}")

    if fixture.get("axioms"):
        axioms = check_superalgebra_axioms(g.elements())
        if not axioms.ok:
            diffs.extend(f"axioma: {text}" for text in axioms.failures[:5])

    for item in fixture.get("regraded_from", []):
        source = _cached(item["entry"], item.get("p"), item.get("truncation"), ())
        sliced = R.regraded(source.slice, item["degrees"], -1, f"{item['entry']} regraduada")
        got = algebraic_growth(sliced)
        if not _same_growth(GrowthVector.parse(item["growth"]), got):
            diffs.append(f"regraduación de {item['entry']}: esperado {item['growth']}, calculado {got}")

    report.computed = computed
    report.diffs = diffs
    report.notes.extend(real.notes)
    if diffs:
        report.status = VerifyStatus.FAIL
    elif deviation:
        report.status = VerifyStatus.DEVIATION
    else:
        report.status = VerifyStatus.PASS
    logger.info(f"verify {name}: {report.status.value}{' ' + '; '.join(diffs) if diffs else ''}")
    return report


def _verify_or_skip(name: str, config: Optional[WorkbenchConfig]) -> Optional[VerifyReport]:
    try:
        return verify(name, config=config)
    except UnsupportedEntryError as e:
        logger.warning(f"Fixture {name} omitido: {e}")
        return None


def verify_all(
    filter_text: Optional[str] = None,
    config: Optional[WorkbenchConfig] = None,
    workers: int = 1,
) -> List[VerifyReport]:
    """verify sobre todos los fixtures que pasan el filtro, en orden alfabético; ``workers > 1`` reparte las entradas entre procesos."""
    names = [name for name in fixture_names() if _matches_filter(load_fixture(name), filter_text)]
    if workers > 1 and len(names) > 1:
        with Pool(min(workers, len(names))) as pool:
            pending = [pool.apply_async(_verify_or_skip, (name, config)) for name in names]
            results = [job.get() for job in pending]
    else:
        results = [_verify_or_skip(name, config) for name in names]
    return [report for report in results if report is not None]
