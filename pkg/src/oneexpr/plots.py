"""Figure rendering for growth reports.

Draws the per-n growth-constant and exponent estimates with their
extrapolated values, and writes the figure straight to a file (format
chosen by the extension).  Uses matplotlib's object API only, so no
global backend or pyplot state is touched.
"""

from __future__ import annotations

from .growth import GrowthEstimate

__all__ = ["save_growth_figure"]


def save_growth_figure(est: GrowthEstimate, path: str, title: str | None = None) -> None:
    from matplotlib.figure import Figure

    # The first few estimates are far from the limit and would squash the
    # informative tail, so start the curves at n = 10 when possible.
    ns = [n for n in sorted(est.mu) if n >= 10] or sorted(est.mu)
    fig = Figure(figsize=(7.0, 6.0))
    ax_mu, ax_g = fig.subplots(2, 1, sharex=True)

    ax_mu.plot(ns, [est.mu[n] for n in ns], lw=1.0, color="tab:blue")
    ax_mu.axhline(est.mu_hat, ls="--", lw=1.0, color="tab:red",
                  label=f"extrapolated mu = {est.mu_hat:.6g}")
    ax_mu.set_ylabel("mu(n)")
    ax_mu.legend(loc="best", fontsize=9)

    ax_g.plot(ns, [est.g[n] for n in ns], lw=1.0, color="tab:blue")
    ax_g.axhline(est.g_hat, ls="--", lw=1.0, color="tab:red",
                 label=f"extrapolated g = {est.g_hat:.6g}")
    ax_g.set_ylabel("g(n)")
    ax_g.set_xlabel("n")
    ax_g.legend(loc="best", fontsize=9)

    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
