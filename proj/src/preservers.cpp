#include "metricforge/preservers.hpp"

#include "metricforge/combinators.hpp"
#include "metricforge/errors.hpp"
#include "metricforge/numbers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace metricforge {

ClassSpec ClassSpec::make(Axiom axiom, double k) {
    if (axiom == Axiom::U) throw PreconditionError("axiom U is not supported as a preservation class");
    if (axiom == Axiom::M) return ClassSpec{Axiom::M, 1.0};
    if (!std::isfinite(k) || k < 1.0) throw PreconditionError("relaxation constant must be finite and >= 1");
    return ClassSpec{axiom, k};
}

TripletKind triplet_kind(Axiom axiom) {
    switch (axiom) {
    case Axiom::M: return TripletKind::TT;
    case Axiom::S: return TripletKind::SKTT;
    case Axiom::B: return TripletKind::KTT;
    case Axiom::P: return TripletKind::POLY;
    case Axiom::U: break;
    }
    throw PreconditionError("axiom U has no triplet form");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Running arg-max. Larger value wins; equal values go to the smaller index
// tuple, which is the lexicographically smaller source tuple because grid
// values are ascending and tuples store their indices largest first.
struct Best {
    double value = -kInf;
    std::vector<std::size_t> index;
    bool tt_failure = false;
    std::uint64_t scanned = 0;

    void offer(double v, std::span<const std::size_t> idx) {
        if (v > value || (v == value && std::lexicographical_compare(idx.begin(), idx.end(), index.begin(), index.end()))) {
            value = v;
            index.assign(idx.begin(), idx.end());
        }
    }

    void merge(const Best& other) {
        if (!other.index.empty()) offer(other.value, other.index);
        tt_failure = tt_failure || other.tt_failure;
        scanned += other.scanned;
    }
};

double target_constant(double x, double y, double z, Axiom target) {
    // x >= y >= z
    if (target == Axiom::S) {
        if (z == 0.0) return x > y ? kInf : 1.0;
        return std::max(1.0, (x - y) / z);
    }
    return polygon_constant(x, y + z);
}

template <class Work>
Best run_partitioned(std::size_t outer, unsigned threads, Work work) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(outer, 1))));
    std::vector<Best> partial(threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < outer; ++i) work(i, partial[0]);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < outer; i += threads) work(i, partial[t]);
            });
        pool.clear();
    }
    Best total;
    for (const auto& p : partial) total.merge(p);
    return total;
}

std::vector<double> image_of(const FunctionSpec& f, const std::vector<double>& values) {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = f(values[i]);
    return out;
}

} // namespace

PreservationReport preservation_scan(const FunctionSpec& f, const ClassSpec& source_in, Axiom target,
                                     const ScanOptions& options) {
    const ClassSpec source = ClassSpec::make(source_in.axiom, source_in.k);
    if (target == Axiom::U) throw PreconditionError("axiom U is not supported as a scan target");
    const bool polygon = source.axiom == Axiom::P;
    if (polygon != (target == Axiom::P))
        throw PreconditionError("polygon scans need both source and target axiom P");
    if (polygon && options.max_len < 3) throw PreconditionError("max_len must be >= 3");

    PreservationReport report;
    report.function = f.canonical();
    report.source = source;
    report.target = target;
    report.grid = polygon ? polygon_grid(options.grid, options.max_len, options.polygon_budget) : options.grid;
    report.max_len = polygon ? options.max_len : 3;

    const auto& values = report.grid.values();
    const std::vector<double> fv = image_of(f, values);
    const double tol = options.tol;

    Best best;
    if (!polygon) {
        const TripletKind kind = triplet_kind(source.axiom);
        best = run_partitioned(values.size(), options.threads, [&](std::size_t ia, Best& local) {
            std::size_t idx[3];
            for_each_triplet_index(values, kind, source.k, tol, ia, ia + 1, [&](std::size_t i, std::size_t j, std::size_t k) {
                double x = fv[i], y = fv[j], z = fv[k];
                if (x < y) std::swap(x, y);
                if (y < z) std::swap(y, z);
                if (x < y) std::swap(x, y);
                if (target == Axiom::M && !(x <= (y + z) * (1.0 + tol))) local.tt_failure = true;
                idx[0] = i; idx[1] = j; idx[2] = k;
                local.offer(target_constant(x, y, z, target), idx);
                ++local.scanned;
            });
        });
    } else {
        best = run_partitioned(values.size(), options.threads, [&](std::size_t i0, Best& local) {
            for_each_polygon_index(values, source.k, tol, options.max_len, i0, i0 + 1,
                                   [&](const std::vector<std::size_t>& idx) {
                                       std::size_t arg = 0;
                                       for (std::size_t p = 1; p < idx.size(); ++p)
                                           if (fv[idx[p]] > fv[idx[arg]]) arg = p;
                                       double tail = 0.0;
                                       for (std::size_t p = 0; p < idx.size(); ++p)
                                           if (p != arg) tail += fv[idx[p]];
                                       local.offer(polygon_constant(fv[idx[arg]], tail), idx);
                                       ++local.scanned;
                                   });
        });
    }

    report.tuples_scanned = best.scanned;
    if (!best.index.empty()) {
        report.estimated_k2 = best.value;
        for (std::size_t i : best.index) {
            report.worst_tuple.push_back(values[i]);
            report.worst_image.push_back(fv[i]);
        }
        std::sort(report.worst_image.begin(), report.worst_image.end(), std::greater<>());
    }
    report.violation = std::isinf(report.estimated_k2) || best.tt_failure;
    return report;
}

std::vector<GmapPoint> estimate_gmap(const FunctionSpec& f, Axiom source, Axiom target, std::span<const double> k1_list,
                                     const ScanOptions& options) {
    if (k1_list.empty()) throw PreconditionError("K1 list is empty");
    for (std::size_t i = 0; i < k1_list.size(); ++i) {
        if (!(k1_list[i] >= 1.0)) throw PreconditionError("every K1 must be >= 1");
        if (i > 0 && k1_list[i] < k1_list[i - 1]) throw PreconditionError("K1 list must be sorted ascending");
    }
    std::vector<GmapPoint> out;
    for (double k1 : k1_list) {
        const auto report = preservation_scan(f, ClassSpec::make(source, k1), target, options);
        out.push_back(GmapPoint{k1, report.estimated_k2, report.violation});
    }
    return out;
}

FiniteSemimetricSpace build_witness_space(std::span<const Triplet> triplets, const ClassSpec& source_in, double tol) {
    const ClassSpec source = ClassSpec::make(source_in.axiom, source_in.k);
    if (triplets.empty()) throw PreconditionError("build_witness_space needs at least one triplet");
    const TripletKind kind = triplet_kind(source.axiom);
    std::vector<FiniteSemimetricSpace> blocks;
    for (std::size_t n = 0; n < triplets.size(); ++n) {
        const Triplet& t = triplets[n];
        if (!satisfies(t, kind, source.k, tol))
            throw BlockViolatesSourceError("triplet (" + format_number(t.a()) + "," + format_number(t.b()) + "," +
                                           format_number(t.c()) + ") does not satisfy " + std::string(to_string(kind)) +
                                           " at K = " + format_number(source.k));
        blocks.push_back(three_point_space(t.a(), t.b(), t.c(), std::to_string(n + 1) + "."));
    }
    BridgeMode mode = BridgeMode::STRONG;
    if (source.axiom == Axiom::B) mode = BridgeMode::B;
    if (source.axiom == Axiom::P) mode = BridgeMode::RPI;
    return chain_concatenate(blocks, source.k, mode, tol);
}

Verification verify_on_space(const FunctionSpec& f, const FiniteSemimetricSpace& space, Axiom target, double K2,
                             double tol) {
    if (!(K2 >= 1.0)) throw PreconditionError("K2 must be >= 1");
    Verification v;
    v.profile = classify(transform(space, f), tol);
    v.holds = satisfies_axiom(v.profile, target, K2);
    return v;
}

} // namespace metricforge
