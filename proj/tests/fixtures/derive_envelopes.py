#!/usr/bin/env python3
"""Rederive the envelope constants in envelopes.md from the library CLI.

Usage: derive_envelopes.py <path-to-llz-binary>

Prints the per-weight harmonic-average table and the proposed constants.
The family subcommand emits the harmonic_avg row of each report; the Maass
average comes from a short helper run of the checks command plus the bundled
data file.
"""
import subprocess, sys

def main():
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    llz = sys.argv[1]
    worst = 0.0
    print("k  k*|avg-1|")
    for k in range(12, 62, 2):
        if k == 14:
            continue
        out = subprocess.run(
            [llz, "family", "--tag", "phi-f", "--k", str(k), "--sigma", "0.125",
             "--maass", "maass_even_t13.7798.txt", "--euler-p", "10000",
             "--nmax", "10000"],
            capture_output=True, text=True, check=True).stdout
        for line in out.splitlines():
            parts = line.split(",")
            if len(parts) >= 5 and parts[3] == "harmonic_avg":
                excess = abs(float(parts[4]) - 1.0) * k
                worst = max(worst, excess)
                print(f"{k}  {excess:.1f}")
    print(f"harmonic_envelope_C >= {worst:.1f}")

if __name__ == "__main__":
    main()
