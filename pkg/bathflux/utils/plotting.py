"""Gráficas SVG estáticas de un barrido"""

from pathlib import Path
from typing import Union

import matplotlib
import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from bathflux.core.scans import column_array
from bathflux.schemas.model import ScanResult

# Salt fijo: el SVG es reproducible byte a byte
matplotlib.rcParams["svg.hashsalt"] = "bathflux"

_LABELS = {
    "j_t": r"$J_T$",
    "j_ti": r"$J_{TI}$",
    "e_t": r"$E_T$",
    "e_ti": r"$E_{TI}$",
}


def plot_currents(result: ScanResult, path: Union[str, Path]) -> Path:
    """Dibujar las corrientes y energías finitas frente a t; las columnas divergentes se omiten"""
    times = [sample.t for sample in result.samples]
    # Figura sin estado global de pyplot: el barrido dibuja desde hilos de trabajo
    fig = Figure(figsize=(6.4, 6.0))
    FigureCanvasAgg(fig)
    ax_current, ax_energy = fig.subplots(2, 1, sharex=True)

    for name, ax in (("j_t", ax_current), ("j_ti", ax_current), ("e_t", ax_energy), ("e_ti", ax_energy)):
        values = column_array(result, name)
        if values.size and not np.all(np.isnan(values)):
            ax.plot(times, values, linewidth=1.2, label=_LABELS[name])

    ax_current.set_ylabel("current")
    ax_energy.set_ylabel("bath energy")
    ax_energy.set_xlabel("t")
    ax_current.set_title(f"{result.model.bath.kind}, {result.model.initial.value}, N = {result.model.chain.n_sites}")
    for ax in (ax_current, ax_energy):
        if ax.lines:
            ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(target, format="svg", metadata={"Date": None})
    return target
