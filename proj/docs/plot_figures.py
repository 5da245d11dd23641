#!/usr/bin/env python3
# Copyright 2026 The sppcert Authors
# SPDX-License-Identifier: Apache-2.0
"""Plot the CSV files written by `sppcert figure`.

    sppcert figure fig1 --out fig1.csv
    python3 docs/plot_figures.py fig1.csv
"""

import sys
from pathlib import Path

import matplotlib.pyplot as plt
import pandas as pd


def plot_absolute(df, ax):
    ax.plot(df.N, df.exact_p1, "k-", label="exact p1")
    ax.plot(df.N, df.lower_vacuum, "b--", label="vacuum lower")
    ax.plot(df.N, df.upper_vacuum, "b:", label="vacuum upper")
    ax.plot(df.N, df.lower_photon, "r--", label="photon lower")
    ax.plot(df.N, df.upper_photon, "r:", label="photon upper")
    ax.set_xlabel("N")
    ax.set_ylabel("p1")


def plot_relative(df, ax):
    ax.semilogy(df.N, df.exact_ratio, "k-", label="exact p1/q")
    ax.semilogy(df.N, df.lower_vacuum, "b--", label="vacuum lower")
    ax.semilogy(df.N, df.lower_photon, "r--", label="photon lower")
    ax.set_xlabel("N")
    ax.set_ylabel("p1/q")


def plot_qd(df, ax):
    ax.plot(df.p1_tilde, df.exact_p1, "k-", label="exact p1")
    ax.plot(df.p1_tilde, df.lower_photon, "r--", label="photon lower")
    ax.plot(df.p1_tilde, df.lower_vacuum, "b--", label="vacuum lower")
    ax.plot(df.p1_tilde, df.p1_tilde, "g:", label="p1 tilde")
    ax.set_xlabel("p1 tilde")
    ax.set_ylabel("p1")


def main(paths):
    for path in map(Path, paths):
        df = pd.read_csv(path)
        fig, ax = plt.subplots(figsize=(5, 3.5))
        if "p1_tilde" in df:
            plot_qd(df, ax)
        elif "exact_ratio" in df:
            plot_relative(df, ax)
        else:
            plot_absolute(df, ax)
        ax.legend(fontsize="small")
        fig.tight_layout()
        fig.savefig(path.with_suffix(".png"), dpi=150)


if __name__ == "__main__":
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    main(sys.argv[1:])
