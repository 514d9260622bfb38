"""Shared job list for the CLI-level checks."""

import os
import subprocess

JOBS = {
    "verify-hyperkahler": ["verify", "-m", "algstar nu=3 kappa0=0.5", "-s", "hyperkahler", "--samples", "20"],
    "verify-closedness": ["verify", "-m", "alg beta=3/4", "-s", "closedness", "--samples", "4"],
    "verify-deck": ["verify", "-m", "semiflat nu=2 epsilon=2pi k0=1", "-s", "deck", "--samples", "10"],
    "verify-curvature": ["verify", "-m", "algstar nu=1 kappa0=0 L=1 R=30", "-s", "curvature-decay"],
    "verify-volume": ["verify", "-m", "algstar nu=2", "-s", "volume", "--samples", "20000", "--seed", "4"],
    "verify-isometry": ["verify", "-m", "semiflat nu=4 epsilon=8pi k0=0.5", "-s", "isometry", "--samples", "5"],
    "verify-lie": ["verify", "-m", "alg beta=5/6", "-s", "lie-derivative", "--samples", "3"],
    "verify-moment": ["verify", "-m", "semiflat nu=1", "-s", "moment-map", "--samples", "5"],
    "classify": ["classify", "{data}/I1_star_family.json"],
    "decay-fit-twin": ["decay-fit", "--model-a", "semiflat nu=1", "--expect", "exact"],
    "decay-fit-log": ["decay-fit", "--model-a", "algstar nu=1 kappa0=0 R=30",
                      "--model-b", "algstar nu=1 kappa0=0.1 R=30", "--expect", "log"],
    "families": ["families", "--type", "all", "--samples", "10", "--seed", "11"],
}


def run_job(exe, data_dir, name, out_path, threads=None):
    args = [a.replace("{data}", data_dir) for a in JOBS[name]]
    env = dict(os.environ)
    if threads is not None:
        env["INSTANTON_LAB_THREADS"] = str(threads)
    proc = subprocess.run([exe, *args, "--out", out_path], env=env, capture_output=True, text=True)
    return proc
