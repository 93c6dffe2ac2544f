"""Workbench de álgebras de Lie vectoriales modulares - Aplicación principal."""

import streamlit as st
import pandas as pd
import logging

# Configurar logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# Imports internos
from src.core import (
    Series, WorkbenchConfig, WorkbenchError, VerifyStatus,
    algebraic_growth, flag, growth_formula, validate_w_grading,
)
from src.data import CATALOG, construct, fixture_names, load_fixture, parse_heights, verify, verify_all
from src.services import basis_table, catalog_table, dims_table, export_to_excel, to_json, slice_document, verify_table

# Configuración de página
st.set_page_config(
    page_title="Workbench de álgebras vectoriales",
    page_icon="🧮",
    layout="wide"
)

st.title("🧮 Workbench de álgebras de Lie vectoriales modulares")
st.markdown("Construcción exacta sobre **Q** y **GF(p)**: porciones graduadas, vectores de crecimiento y verificación")


# =============================================
# FUNCIONES AUXILIARES
# =============================================

STATUS_ICONS = {
    VerifyStatus.PASS: "✅",
    VerifyStatus.FAIL: "❌",
    VerifyStatus.DEVIATION: "⚠️",
    VerifyStatus.REFERENCE: "📚",
}


def format_status(status: VerifyStatus) -> str:
    return f"{STATUS_ICONS[status]} {status.value.upper()}"


@st.cache_data(show_spinner=False)
def _construct_cached(name: str, p, truncation: int, seed: int, heights_text: str):
    """Devuelve (documento JSON, tablas, crecimiento, W-informe) de una construcción."""
    config = WorkbenchConfig(p=p or 0, truncation=truncation, seed=seed)
    params = {"heights": parse_heights(heights_text)} if heights_text else {}
    real = construct(name, p, truncation, config, **params)
    g = real.slice
    negative = g.negative()
    growth = None
    if negative.depth > 1:
        source = load_fixture(name).get("growth_source", "algebraic") if name in fixture_names() else "algebraic"
        growth = flag(real.flag_fields) if source == "flag" and real.flag_fields else algebraic_growth(negative)
    report = validate_w_grading(g, config) if 0 in g.degrees and -1 in g.degrees else None
    return (
        slice_document(g, growth, real.notes),
        dims_table(g),
        basis_table(g, limit=40),
        str(growth) if growth else None,
        report.to_dict() if report else None,
    )


# =============================================
# SIDEBAR
# =============================================
with st.sidebar:
    st.header("⚙️ Configuración")

    entry_name = st.selectbox("Entrada del catálogo", sorted(CATALOG), index=sorted(CATALOG).index("3me"))
    entry = CATALOG[entry_name]
    st.caption(f"{entry.family}: {entry.description}")

    if entry.p is None:
        p_value = st.number_input("Característica p (0 = Q)", min_value=0, value=3, step=1)
    else:
        p_value = entry.p
        st.info(f"p = {entry.p} fijada por la entrada")

    truncation = st.number_input("Truncación", min_value=-1, max_value=8, value=entry.truncation, step=1)
    heights_text = st.text_input("Alturas N (opcional)", placeholder="1,1,inf",
                                 help="Sólo para las series; inf = sin acotar")
    seed = st.number_input("Semilla", min_value=0, value=WorkbenchConfig().seed, step=1)

    st.divider()
    with st.expander("📚 Catálogo completo"):
        st.dataframe(catalog_table(CATALOG.values()), use_container_width=True, hide_index=True)


tab_build, tab_growth, tab_verify = st.tabs(["🔧 Construir", "📈 Crecimiento", "✔️ Verificar"])


# =============================================
# CONSTRUIR
# =============================================
with tab_build:
    if entry.reference_only:
        st.warning("Esta entrada sólo tiene datos de referencia")
    elif st.button("🚀 Construir", type="primary", use_container_width=True):
        try:
            with st.spinner(f"Construyendo {entry_name}..."):
                doc, df_dims, df_basis, growth, w_report = _construct_cached(
                    entry_name, int(p_value), int(truncation), int(seed), heights_text.strip()
                )
        except WorkbenchError as e:
            st.error(f"❌ {e}")
            st.stop()

        col1, col2, col3 = st.columns(3)
        with col1:
            st.metric("Profundidad", doc["slice"]["depth"])
        with col2:
            st.metric("Crecimiento", growth or "profundidad 1")
        with col3:
            if w_report:
                st.metric("g_-1 irreducible", w_report["irreducible_gm1"])

        st.subheader("Dimensiones")
        st.dataframe(df_dims, use_container_width=True, hide_index=True)
        with st.expander("Base por grado"):
            st.dataframe(df_basis, use_container_width=True, hide_index=True)
        for note in doc.get("notes", []):
            st.caption(f"ℹ️ {note}")

        col1, col2 = st.columns(2)
        with col1:
            st.download_button("📥 JSON", to_json(doc), f"{entry_name}.json", "application/json")
        with col2:
            xlsx = export_to_excel({"Dimensiones": df_dims, "Base": df_basis})
            st.download_button("📥 Excel", xlsx, f"{entry_name}.xlsx")


# =============================================
# CRECIMIENTO DE LAS SERIES
# =============================================
with tab_growth:
    st.markdown("Fórmula cerrada para las series **K** (contacto) y **M** (pericontacto)")
    col1, col2, col3, col4 = st.columns(4)
    with col1:
        series = st.selectbox("Serie", [s.value for s in Series])
    with col2:
        n = st.number_input("n", min_value=0, value=2, step=1)
    with col3:
        m = st.number_input("m", min_value=0, value=0, step=1, disabled=series == "M")
    with col4:
        r = st.number_input("r", min_value=0, value=0, step=1)
    try:
        st.metric("Vector de crecimiento", str(growth_formula(Series(series), int(n), int(m), int(r))))
    except WorkbenchError as e:
        st.error(f"❌ {e}")


# =============================================
# VERIFICAR
# =============================================
with tab_verify:
    filter_text = st.text_input("Filtro", placeholder="p=3 o family=skryabin")
    col1, col2 = st.columns(2)
    with col1:
        run_one = st.button(f"Verificar {entry_name}", disabled=entry_name not in fixture_names())
    with col2:
        run_all = st.button("Verificar todo", type="primary")

    reports = []
    config = WorkbenchConfig(seed=int(seed))
    if run_one:
        with st.spinner(f"Verificando {entry_name}..."):
            reports = [verify(entry_name, config=config)]
    elif run_all:
        with st.status("Verificando fixtures...", expanded=False) as status:
            reports = verify_all(filter_text or None, config)
            status.update(label=f"✅ {len(reports)} entradas verificadas", state="complete")

    if reports:
        df = verify_table(reports)
        df["Estado"] = [format_status(r.status) for r in reports]
        counts = pd.Series([r.status.value for r in reports]).value_counts()
        cols = st.columns(len(counts))
        for col, (status_value, count) in zip(cols, counts.items()):
            col.metric(format_status(VerifyStatus(status_value)), int(count))
        st.dataframe(df, use_container_width=True, hide_index=True)
        st.download_button("📥 Exportar Excel", export_to_excel({"Verificación": verify_table(reports)}),
                           "verificacion.xlsx")
