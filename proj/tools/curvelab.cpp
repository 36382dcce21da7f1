// Command-line front end.  Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvelab/curvelab.h"

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct Failed {
  int code;
};

void check(cl_status s) {
  if (s == CL_OK) return;
  std::cerr << "error: " << cl_last_error() << "\n";
  throw Failed{s == CL_ERR_USAGE ? kExitUsage : kExitDomain};
}

struct Owned {
  char* p = nullptr;
  ~Owned() { cl_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Surface {
  cl_surface* s = nullptr;
  explicit Surface(const std::string& spec) { check(cl_surface_create(spec.c_str(), &s)); }
  ~Surface() { cl_surface_free(s); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    throw Failed{kExitUsage};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    throw Failed{kExitDomain};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvelab: curves, covers and random walks on surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(cl_version()));

  std::uint64_t seed = 1;
  int jobs = 1;
  std::string config_path;
  app.add_option("--seed", seed, "Master seed for all randomness")->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads; results do not depend on it")->check(CLI::Range(1, 1024))->capture_default_str();
  app.add_option("--config", config_path, "key = value experiment configuration file");

  std::string surface = "punctured-torus";
  std::string word, other, alpha = "a";
  auto add_surface = [&](CLI::App* sub) {
    sub->add_option("--surface", surface, "Preset name or rose:<order>")->capture_default_str();
  };

  auto* reduce = app.add_subcommand("reduce", "Free and cyclic reduction of a word");
  bool cyclic = false;
  reduce->add_option("--word", word, "Word, e.g. abAB")->required();
  reduce->add_flag("--cyclic", cyclic, "Print the canonical cyclic word instead");

  auto* self_int = app.add_subcommand("self-int", "Self-intersection number of a closed curve");
  add_surface(self_int);
  self_int->add_option("--word", word)->required();

  auto* inter = app.add_subcommand("int", "Geometric intersection number of two curves");
  add_surface(inter);
  inter->add_option("--word", word, "First curve")->required();
  inter->add_option("--other", other, "Second curve")->required();

  auto* degree = app.add_subcommand("degree", "Simple lifting degree (exhaustive search)");
  add_surface(degree);
  int d_max = 6;
  bool show_witness = false;
  degree->add_option("--word", word)->required();
  degree->add_option("--dmax", d_max, "Largest cover degree searched")->check(CLI::Range(1, 8))->capture_default_str();
  degree->add_flag("--witness", show_witness, "Also print the covering representation");

  auto* spiral = app.add_subcommand("spiral", "Spiraling of a curve around a simple core");
  add_surface(spiral);
  spiral->add_option("--word", word)->required();
  spiral->add_option("--alpha", alpha, "Simple core curve")->capture_default_str();

  auto* count = app.add_subcommand("count-subgroups", "Index-d subgroup counts for d = 1..dmax");
  bool free_group = false, closed = false, classes = false;
  int rank = 2, genus = 2;
  count->add_flag("--free", free_group, "Free group of the given rank (Hall recursion)");
  count->add_flag("--closed", closed, "Closed surface group of the given genus (Mednykh formula)");
  count->add_flag("--classes", classes, "Free group: also count conjugacy classes");
  count->add_option("--rank", rank)->capture_default_str();
  count->add_option("--genus", genus)->capture_default_str();
  count->add_option("--dmax", d_max)->capture_default_str();

  auto* minimize = app.add_subcommand("minimize", "Minimize hyperbolic length on the punctured torus");
  minimize->add_option("--word", word)->required();

  auto* walk = app.add_subcommand("walk", "Random walk word of n letters");
  int n = 0;
  std::string mu = "uniform";
  walk->add_option("--n", n, "Number of steps")->required()->check(CLI::NonNegativeNumber);
  walk->add_option("--rank", rank)->capture_default_str();
  walk->add_option("--mu", mu, "Step distribution")->capture_default_str();

  auto* ball = app.add_subcommand("ball", "Uniform element of the ball of radius n");
  ball->add_option("--n", n, "Radius")->required()->check(CLI::NonNegativeNumber);
  ball->add_option("--rank", rank)->capture_default_str();

  auto* drift = app.add_subcommand("drift", "Estimate the drift of |w_n| / n");
  int samples = 1000;
  drift->add_option("--n", n)->required();
  drift->add_option("--samples", samples)->capture_default_str();
  drift->add_option("--rank", rank)->capture_default_str();
  drift->add_option("--mu", mu)->capture_default_str();

  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  std::vector<std::string> sets;
  std::string output, json_out, raw_out;
  bool fit = false;
  experiment->add_option("--set", sets, "key=value override, repeatable");
  experiment->add_option("--output", output, "CSV path (stdout if omitted)");
  experiment->add_option("--json", json_out, "JSON sidecar path (default <output>.json)");
  experiment->add_option("--raw", raw_out, "Raw sample CSV path (needs retain_raw = true)");
  experiment->add_flag("--fit", fit, "Print power-law and log-law fits to stderr");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (reduce->parsed()) {
      Owned out;
      check(cyclic ? cl_cyclic_reduce(word.c_str(), &out.p) : cl_reduce(word.c_str(), &out.p));
      std::cout << out.str() << "\n";
    } else if (self_int->parsed()) {
      Surface s(surface);
      int64_t v = 0;
      check(cl_self_intersection(s.s, word.c_str(), &v));
      std::cout << v << "\n";
    } else if (inter->parsed()) {
      Surface s(surface);
      int64_t v = 0;
      check(cl_intersection(s.s, word.c_str(), other.c_str(), &v));
      std::cout << v << "\n";
    } else if (degree->parsed()) {
      Surface s(surface);
      cl_degree_result r{};
      Owned witness;
      check(cl_lifting_degree(s.s, word.c_str(), d_max, jobs, &r, &witness.p));
      if (r.found) {
        std::cout << r.degree << "\n";
        if (show_witness) std::cout << witness.str() << "\n";
      } else {
        std::cout << ">" << r.d_max << "\n";
      }
    } else if (spiral->parsed()) {
      Surface s(surface);
      int64_t v = 0;
      check(cl_spiraling(s.s, word.c_str(), alpha.c_str(), &v));
      std::cout << v << "\n";
    } else if (count->parsed()) {
      if (free_group == closed) {
        std::cerr << "error: pass exactly one of --free and --closed\n";
        return kExitUsage;
      }
      if (classes && !free_group) {
        std::cerr << "error: --classes needs --free\n";
        return kExitUsage;
      }
      for (int d = 1; d <= d_max; ++d) {
        Owned v;
        check(cl_count_subgroups(free_group ? 1 : 0, free_group ? rank : genus, d, &v.p));
        std::cout << d << "," << v.str();
        if (classes) {
          uint64_t c = 0;
          check(cl_count_subgroup_classes(rank, d, &c));
          std::cout << "," << c;
        }
        std::cout << "\n";
      }
    } else if (minimize->parsed()) {
      cl_minimize_result r{};
      check(cl_minimize_length(word.c_str(), &r));
      const char* status = r.status == CL_MIN_CONVERGED ? "converged" : r.status == CL_MIN_DIVERGED ? "diverged" : "budget";
      char buf[512];
      std::snprintf(buf, sizeof buf,
                    "status=%s\nx=%.12g\ny=%.12g\nz=%.12g\nlength=%.12g\ngradient_norm=%.3g\niterations=%d\n", status,
                    r.x, r.y, r.z, r.value, r.gradient_norm, r.iterations);
      std::cout << buf;
      if (r.status == CL_MIN_CONVERGED) {
        std::snprintf(buf, sizeof buf, "distance_proxy=%.12g\n", r.distance_proxy);
        std::cout << buf;
      }
    } else if (walk->parsed()) {
      Owned w;
      check(cl_random_walk(rank, mu.c_str(), n, seed, &w.p));
      std::cout << w.str() << "\n";
    } else if (ball->parsed()) {
      Owned w;
      check(cl_ball_sample(rank, n, seed, &w.p));
      std::cout << w.str() << "\n";
    } else if (drift->parsed()) {
      double mean = 0, lo = 0, hi = 0;
      check(cl_drift(rank, mu.c_str(), n, samples, seed, jobs, &mean, &lo, &hi));
      char buf[128];
      std::snprintf(buf, sizeof buf, "%.6f [%.6f, %.6f]\n", mean, lo, hi);
      std::cout << buf;
    } else if (experiment->parsed()) {
      cl_config* raw_cfg = nullptr;
      check(cl_config_create(&raw_cfg));
      std::unique_ptr<cl_config, void (*)(cl_config*)> cfg(raw_cfg, cl_config_free);
      if (!config_path.empty()) check(cl_config_load(cfg.get(), read_file(config_path).c_str()));
      for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
          std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
          return kExitUsage;
        }
        check(cl_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
      }
      if (app.get_option("--seed")->count() > 0) check(cl_config_set(cfg.get(), "seed", std::to_string(seed).c_str()));
      if (app.get_option("--jobs")->count() > 0) check(cl_config_set(cfg.get(), "jobs", std::to_string(jobs).c_str()));
      cl_table* raw_table = nullptr;
      check(cl_experiment_run(cfg.get(), &raw_table));
      std::unique_ptr<cl_table, void (*)(cl_table*)> table(raw_table, cl_table_free);
      Owned csv, json;
      check(cl_table_csv(table.get(), &csv.p));
      check(cl_table_json(table.get(), &json.p));
      if (output.empty()) {
        std::cout << csv.str();
        if (!json_out.empty()) write_file(json_out, json.str());
      } else {
        write_file(output, csv.str());
        write_file(json_out.empty() ? output + ".json" : json_out, json.str());
      }
      if (!raw_out.empty()) {
        Owned raw;
        check(cl_table_raw_csv(table.get(), &raw.p));
        write_file(raw_out, raw.str());
      }
      if (fit) {
        double slope = 0, se = 0;
        if (cl_table_fit_power(table.get(), &slope, &se) == CL_OK) {
          std::fprintf(stderr, "power-law exponent %.4f +- %.4f\n", slope, se);
        } else {
          std::fprintf(stderr, "power-law fit unavailable: %s\n", cl_last_error());
        }
        if (cl_table_fit_log(table.get(), &slope, &se) == CL_OK) {
          std::fprintf(stderr, "slope against log n %.4f +- %.4f\n", slope, se);
        } else {
          std::fprintf(stderr, "log-law fit unavailable: %s\n", cl_last_error());
        }
      }
    } else if (verify->parsed()) {
      int failures = 0;
      check(cl_verify(
          [](const char* name, int passed, const char* detail, void*) {
            std::cout << (passed ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
            std::cout.flush();
          },
          nullptr, &failures));
      return failures == 0 ? 0 : kExitDomain;
    }
  } catch (const Failed& f) {
    return f.code;
  }
  return 0;
}
