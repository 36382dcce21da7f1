#include "curvelab/curvelab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "covers.hpp"
#include "errors.hpp"
#include "fricke.hpp"
#include "intersect.hpp"
#include "ribbon.hpp"
#include "stats.hpp"
#include "verify.hpp"

using namespace curvelab;

struct cl_surface {
  RibbonGraph graph;
};

struct cl_config {
  ExperimentConfig config;
};

struct cl_table {
  ExperimentTable table;
};

namespace {

thread_local std::string last_error;

template <class F>
cl_status guarded(F&& f) {
  try {
    f();
    return CL_OK;
  } catch (const UsageError& e) {
    last_error = e.what();
    return CL_ERR_USAGE;
  } catch (const DomainError& e) {
    last_error = e.what();
    return CL_ERR_DOMAIN;
  } catch (const BudgetExceeded& e) {
    last_error = e.what();
    return CL_ERR_BUDGET;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return CL_ERR_INTERNAL;
  }
}

template <class T>
void need(T* p, const char* what) {
  if (p == nullptr) throw UsageError(std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const RibbonGraph& rose_of(const cl_surface* s) {
  need(s, "surface");
  if (!s->graph.is_rose()) throw UsageError("this operation needs a one-vertex spine");
  return s->graph;
}

CyclicWord class_of(const char* word) {
  need(word, "word");
  return cyclic_reduce(Word::parse(word));
}

WalkDistribution walk_of(int rank, const char* mu) { return WalkDistribution::parse(mu ? mu : "uniform", rank); }

}  // namespace

extern "C" {

const char* cl_last_error(void) { return last_error.c_str(); }

const char* cl_version(void) {
  static const std::string v = version_string();
  return v.c_str();
}

void cl_string_free(char* s) { std::free(s); }

cl_status cl_surface_create(const char* spec, cl_surface** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = new cl_surface{RibbonGraph::preset(spec)};
  });
}

cl_status cl_surface_parse(const char* text, cl_surface** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new cl_surface{RibbonGraph::parse(text)};
  });
}

void cl_surface_free(cl_surface* s) { delete s; }

cl_status cl_surface_serialize(const cl_surface* s, char** out) {
  return guarded([&] {
    need(s, "surface");
    need(out, "out");
    *out = dup(s->graph.serialize());
  });
}

cl_status cl_surface_info(const cl_surface* s, int* rank, int* genus, int* boundary, int* euler) {
  return guarded([&] {
    need(s, "surface");
    const SurfaceSignature sig = signature(s->graph);
    if (rank) *rank = s->graph.rank();
    if (genus) *genus = sig.genus;
    if (boundary) *boundary = sig.boundary_count;
    if (euler) *euler = sig.euler_characteristic;
  });
}

cl_status cl_reduce(const char* word, char** out) {
  return guarded([&] {
    need(word, "word");
    need(out, "out");
    *out = dup(reduce(Word::parse(word)).str());
  });
}

cl_status cl_cyclic_reduce(const char* word, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup(class_of(word).str());
  });
}

cl_status cl_conjugates_in_ball(const char* word, int rank, int n, uint64_t* out) {
  return guarded([&] {
    need(out, "out");
    if (n < 0) throw UsageError("radius must be >= 0");
    const CyclicWord c = class_of(word);
    if (c.word().rank_used() > rank) throw UsageError("word uses letters outside the alphabet");
    *out = conjugates_in_ball(c, n, Alphabet(rank));
  });
}

cl_status cl_self_intersection(const cl_surface* s, const char* word, int64_t* out) {
  return guarded([&] {
    need(out, "out");
    const RibbonGraph& g = rose_of(s);
    const CyclicWord c = class_of(word);
    *out = c.empty() ? 0 : self_intersection(g, c);
  });
}

cl_status cl_intersection(const cl_surface* s, const char* p, const char* q, int64_t* out) {
  return guarded([&] {
    need(out, "out");
    *out = intersection(rose_of(s), class_of(p), class_of(q));
  });
}

cl_status cl_spiraling(const cl_surface* s, const char* gamma, const char* alpha, int64_t* out) {
  return guarded([&] {
    need(out, "out");
    *out = spiraling(class_of(gamma), class_of(alpha), rose_of(s));
  });
}

cl_status cl_lifting_degree(const cl_surface* s, const char* word, int d_max, int jobs, cl_degree_result* out,
                            char** witness) {
  return guarded([&] {
    need(out, "out");
    DegreeSearchOptions opt;
    opt.d_max = d_max;
    opt.jobs = jobs;
    const auto r = simple_lifting_degree(class_of(word), rose_of(s), opt);
    out->found = r.found ? 1 : 0;
    out->degree = r.degree;
    out->d_max = r.d_max;
    out->start_sheet = r.elevation_start_sheet;
    out->winding = r.elevation_winding;
    if (witness) *witness = dup(r.witness ? r.witness->cycle_notation() : std::string());
  });
}

cl_status cl_count_subgroups(int free_group, int rank_or_genus, int d, char** out) {
  return guarded([&] {
    need(out, "out");
    const BigInt v = free_group ? hall_count(rank_or_genus, d) : mednykh_count(rank_or_genus, d);
    *out = dup(v.str());
  });
}

cl_status cl_count_subgroup_classes(int rank, int d, uint64_t* out) {
  return guarded([&] {
    need(out, "out");
    *out = count_transitive_classes({rank, d, RepMode::free});
  });
}

cl_status cl_geodesic_length(const char* word, double x, double y, double z, double* length) {
  return guarded([&] {
    need(word, "word");
    need(length, "length");
    *length = geodesic_length(Word::parse(word), FrickePoint{x, y, z}).length;
  });
}

cl_status cl_minimize_length(const char* word, cl_minimize_result* out) {
  return guarded([&] {
    need(out, "out");
    const CyclicWord c = class_of(word);
    if (c.empty()) throw DomainError("the trivial word has no length to minimize");
    const MinimizeResult r = minimize_length(c);
    out->status = r.status == MinimizeStatus::converged ? CL_MIN_CONVERGED
                  : r.status == MinimizeStatus::diverged ? CL_MIN_DIVERGED
                                                         : CL_MIN_BUDGET;
    out->x = r.point.x;
    out->y = r.point.y;
    out->z = r.point.z;
    out->value = r.value;
    out->gradient_norm = r.gradient_norm;
    out->iterations = r.iterations;
    out->distance_proxy = r.status == MinimizeStatus::converged ? distance_proxy(r.point, rose_minimizer()) : 0.0;
  });
}

cl_status cl_random_walk(int rank, const char* mu, int n, uint64_t seed, char** out) {
  return guarded([&] {
    need(out, "out");
    const WalkDistribution dist = walk_of(rank, mu);
    Rng rng(sample_seed(seed, static_cast<std::uint64_t>(n < 0 ? 0 : n), 0));
    *out = dup(random_walk(dist, n, rng).str());
  });
}

cl_status cl_ball_sample(int rank, int n, uint64_t seed, char** out) {
  return guarded([&] {
    need(out, "out");
    Rng rng(sample_seed(seed, static_cast<std::uint64_t>(n < 0 ? 0 : n), 0));
    *out = dup(sample_ball_uniform(rank, n, rng).str());
  });
}

cl_status cl_drift(int rank, const char* mu, int n, int samples, uint64_t seed, int jobs, double* mean, double* lo,
                   double* hi) {
  return guarded([&] {
    need(mean, "mean");
    const DriftEstimate d = drift_estimate(walk_of(rank, mu), n, samples, seed, jobs);
    *mean = d.mean;
    if (lo) *lo = d.lo;
    if (hi) *hi = d.hi;
  });
}

cl_status cl_config_create(cl_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new cl_config{};
  });
}

void cl_config_free(cl_config* c) { delete c; }

cl_status cl_config_set(cl_config* c, const char* key, const char* value) {
  return guarded([&] {
    need(c, "config");
    need(key, "key");
    need(value, "value");
    c->config.set(key, value);
  });
}

cl_status cl_config_load(cl_config* c, const char* text) {
  return guarded([&] {
    need(c, "config");
    need(text, "text");
    // Apply to a copy so that a bad line leaves c untouched.
    ExperimentConfig merged = c->config;
    merged.apply(text);
    c->config = merged;
  });
}

cl_status cl_experiment_run(const cl_config* c, cl_table** out) {
  return guarded([&] {
    need(c, "config");
    need(out, "out");
    *out = new cl_table{run_experiment(c->config)};
  });
}

void cl_table_free(cl_table* t) { delete t; }

cl_status cl_table_csv(const cl_table* t, char** out) {
  return guarded([&] {
    need(t, "table");
    need(out, "out");
    *out = dup(t->table.csv());
  });
}

cl_status cl_table_json(const cl_table* t, char** out) {
  return guarded([&] {
    need(t, "table");
    need(out, "out");
    *out = dup(t->table.json());
  });
}

cl_status cl_table_raw_csv(const cl_table* t, char** out) {
  return guarded([&] {
    need(t, "table");
    need(out, "out");
    if (t->table.raw.empty()) throw UsageError("raw samples were not retained (set retain_raw = true)");
    *out = dup(t->table.raw_csv());
  });
}

cl_status cl_table_fit_power(const cl_table* t, double* slope, double* stderr_out) {
  return guarded([&] {
    need(t, "table");
    need(slope, "slope");
    const Fit f = fit_power_law(t->table);
    *slope = f.slope;
    if (stderr_out) *stderr_out = f.stderr_;
  });
}

cl_status cl_table_fit_log(const cl_table* t, double* slope, double* stderr_out) {
  return guarded([&] {
    need(t, "table");
    need(slope, "slope");
    const Fit f = fit_log_law(t->table);
    *slope = f.slope;
    if (stderr_out) *stderr_out = f.stderr_;
  });
}

cl_status cl_verify(cl_verify_report report, void* user, int* failures) {
  return guarded([&] {
    const int bad = run_verification([&](const CheckOutcome& o) {
      if (report) report(o.name.c_str(), o.passed ? 1 : 0, o.detail.c_str(), user);
    });
    if (failures) *failures = bad;
  });
}

}  // extern "C"
