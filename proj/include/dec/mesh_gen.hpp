// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <dec/complex.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace dec {

struct Domain
{
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 1.0;
    double y1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

/// Structured grid of n x n points, each square split along one diagonal.
SimplicialComplex2 gen_right_mesh(int n, const Domain& domain = {});

/// n x n grid of cells, each filled with a 24-triangle acute pattern
/// (largest angle 75 degrees). Requires n >= 2 points per side.
SimplicialComplex2 gen_acute_mesh(int n, const Domain& domain = {});

/// Jittered n x n grid made Delaunay by edge flips.
SimplicialComplex2 gen_delaunay_mesh(int n, const Domain& domain, std::uint64_t seed,
                                     double jitter = 0.2);

/// Flip interior edges until every edge is locally Delaunay. Returns flip count.
int make_delaunay(SimplicialComplex2& cx);

/// Import an ASCII Gmsh 2.2 file, keeping only 3-node triangles.
SimplicialComplex2 import_gmsh(std::istream& in);
SimplicialComplex2 import_gmsh_file(const std::string& path);

/// True when vertex p lies strictly inside the circumcircle of (a, b, c).
bool in_circumcircle(const Point2& a, const Point2& b, const Point2& c, const Point2& p,
                     double rel_tol = 1e-12);

/// Number of triangles whose open circumdisk contains some other vertex.
int count_non_delaunay(const SimplicialComplex2& cx);
double non_delaunay_ratio(const SimplicialComplex2& cx);

struct PerturbOptions
{
    double target = 0.15;
    double tolerance = 0.03;
    std::uint64_t seed = 1;
    /// Absolute minimum triangle area. Non-positive selects 1e-8 * domain area.
    double quality_floor = 0.0;
    /// Initial step as a fraction of the local mean edge length.
    double step_fraction = 0.3;
    int max_sweeps = 200;
    bool throw_on_failure = true;
};

struct PerturbResult
{
    SimplicialComplex2 complex;
    double achieved_ratio = 0.0;
    int accepted_moves = 0;
    bool reached = false;
};

/// Move interior vertices at random until the non-Delaunay ratio is within
/// tolerance of the target. Connectivity and boundary vertices are unchanged.
/// Throws TargetUnreachable when the sweep cap is hit and throw_on_failure is set.
PerturbResult perturb_to_non_delaunay(const SimplicialComplex2& cx, const PerturbOptions& opts);

} // namespace dec
