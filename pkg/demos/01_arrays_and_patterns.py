#!/usr/bin/env python3
"""
Steering vectors and beam patterns
==================================

Walks through the geometry layer: linear and planar arrays, their steering
vectors, and pattern evaluation over an angular grid.
"""

import math

import numpy as np

from omnibeam import (
    AngularGrid,
    ArrayGeometry,
    evaluate_pattern,
    pattern_variance,
    steering_ula,
    steering_upa,
    write_pattern_csv,
)

# --- 1. an 8-element half-wavelength linear array ---------------------------

ula = ArrayGeometry.ula(8, d=0.5)
print(f"ULA: {ula.n_elements} elements, spacing {ula.d_x} wavelengths")

# toward broadside every element is in phase
print("steering at broadside:", np.round(steering_ula(ula, 0.0), 3))

# at 30 degrees the phase advances by -pi/2 per element (sin 30deg = 1/2)
print("steering at 30 deg:   ", np.round(steering_ula(ula, math.radians(30)), 3))

# --- 2. the pattern of a uniform beam ----------------------------------------

grid = AngularGrid.default_ula(1024)
uniform = evaluate_pattern(np.ones(8), ula, grid)
mags = np.abs(uniform.gains[0])
print(f"\nuniform weights: peak gain {mags.max():.3f} (= sqrt(8) = {math.sqrt(8):.3f})"
      f" at theta = {math.degrees(grid.thetas[int(np.argmax(mags))]):.1f} deg")
print(f"pattern variance (flatness metric): {pattern_variance(uniform):.4f}"
      " -- a narrow beam is very far from flat")

write_pattern_csv("uniform_beam.csv", uniform)
print("full pattern written to uniform_beam.csv"
      " (columns phi_rad, theta_rad, re, im, abs, abs2)")

# --- 3. a planar array and its 3D pattern ------------------------------------

upa = ArrayGeometry.upa(4, 4)
print(f"\nUPA: {upa.n_x} x {upa.n_y} elements")
print("steering toward (phi=60deg, theta=20deg), first four entries:",
      np.round(steering_upa(upa, math.radians(60), math.radians(20))[:4], 3))

upa_grid = AngularGrid.default_upa(45, 90)
pat = evaluate_pattern(np.ones(16), upa, upa_grid)
print(f"3D pattern sampled on {upa_grid.n_phi} x {upa_grid.n_theta} grid;"
      f" peak |g| = {np.abs(pat.gains).max():.3f} (= sqrt(16))")
