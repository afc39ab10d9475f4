#pragma once

#include "metricforge/functions.hpp"
#include "metricforge/space.hpp"
#include "metricforge/triplets.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace metricforge {

/// An axiom together with its relaxation constant (always 1 for M).
struct ClassSpec {
    Axiom axiom = Axiom::M;
    double k = 1.0;

    static ClassSpec make(Axiom axiom, double k = 1.0);
};

/// Triplet kind that encodes an axiom on three points (P maps to POLY).
TripletKind triplet_kind(Axiom axiom);

struct ScanOptions {
    Grid grid;
    std::size_t max_len = 6;       // polygon scans only
    double polygon_budget = 1e7;   // polygon tuples per scan; the grid is thinned to fit
    unsigned threads = 1;
    double tol = kDefaultTol;
};

/// Outcome of mapping every sampled source tuple through f.
///
/// estimated_k2 is a lower bound for the true smallest target constant: the
/// supremum, over the scanned tuples, of the target min_constant of the
/// (re-sorted) image. Ties between worst tuples go to the lexicographically
/// smallest source tuple, so the report does not depend on thread count.
struct PreservationReport {
    std::string function;
    ClassSpec source;
    Axiom target = Axiom::M;
    Grid grid;                 // grid actually scanned
    std::size_t max_len = 3;   // tuple length cap (3 for triplet scans)
    double estimated_k2 = 1.0;
    std::vector<double> worst_tuple;  // nonincreasing
    std::vector<double> worst_image;  // f of worst_tuple, nonincreasing
    bool violation = false;
    std::uint64_t tuples_scanned = 0;
};

/// Source and target in {M, S, B} use triplet sampling; P -> P uses polygon
/// sampling. Mixed P / non-P pairs are rejected.
PreservationReport preservation_scan(const FunctionSpec& f, const ClassSpec& source, Axiom target,
                                     const ScanOptions& options = {});

struct GmapPoint {
    double k1 = 1.0;
    double k2 = 1.0;
    bool violation = false;
};

/// One scan per K1 (ascending, all >= 1).
std::vector<GmapPoint> estimate_gmap(const FunctionSpec& f, Axiom source, Axiom target, std::span<const double> k1_list,
                                     const ScanOptions& options = {});

/// Chain of three-point blocks, one per triplet (d(1,2)=a, d(2,3)=b,
/// d(1,3)=c), glued with the source's bridge mode at the source constant.
/// Every triplet must satisfy the source condition.
FiniteSemimetricSpace build_witness_space(std::span<const Triplet> triplets, const ClassSpec& source,
                                          double tol = kDefaultTol);

struct Verification {
    bool holds = false;
    RelaxationProfile profile;  // of the transformed space
};

/// Classifies transform(space, f) and checks `target` at K2.
Verification verify_on_space(const FunctionSpec& f, const FiniteSemimetricSpace& space, Axiom target, double K2,
                             double tol = kDefaultTol);

} // namespace metricforge
