// fdlap: kernel tables, operator application, Poisson solves, heat evolution,
// refinement studies and figure datasets for the fractional discrete Laplacian.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fdlap.hpp"

using namespace fdlap;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kDomain = 2, kStudy = 3 };

struct Options {
  double s = 0.5;
  double h = 0.1;
  long n = 100;
  long radius = 10;
  int dim = 1;
  std::string range = "-20:20";
  std::string offset = "none";
  std::string pair;
  std::string input;
  double alpha = 0.5;
  std::string tail = "auto";
  long m = 0;
  std::string kernel = "closed_form";
  long crossover = 12;
  std::string format = "csv";
  std::string output;
  bool no_timestamp = false;
  double t = 1.0;
  // converge
  int level = 0;
  std::string h_list;
  double window = 0.0, near = 0.0, far = 0.0;
  std::optional<double> exponent;
  double slack = 0.15;
  bool origin_only = false;
  // figure
  int figure = 0;
  bool list = false;
};

std::pair<long, long> parse_range(const std::string& r) {
  const auto colon = r.find(':');
  if (colon == std::string::npos) throw ConfigError("--range must look like lo:hi");
  try {
    const long lo = std::stol(r.substr(0, colon));
    const long hi = std::stol(r.substr(colon + 1));
    if (hi < lo) throw ConfigError("--range: hi must not be below lo");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ConfigError("--range must look like lo:hi with integers");
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw ConfigError("cannot parse number '" + item + "' in list");
    }
  }
  return out;
}

KernelSource parse_source(const std::string& k) {
  if (k == "closed_form") return KernelSource::closed_form;
  if (k == "quadrature") return KernelSource::quadrature;
  if (k == "asymptotic") return KernelSource::asymptotic;
  if (k == "hybrid") return KernelSource::hybrid;
  throw ConfigError("unknown kernel source '" + k + "'");
}

std::optional<TailMode> parse_tail(const std::string& t) {
  if (t == "auto") return std::nullopt;
  if (t == "zero") return TailMode::zero;
  if (t == "ignore") return TailMode::ignore;
  if (t == "sampled") return TailMode::sampled;
  throw ConfigError("unknown tail mode '" + t + "'");
}

bool parse_offset(const std::string& o) {
  if (o == "half") return true;
  if (o == "none") return false;
  throw ConfigError("--offset must be 'half' or 'none'");
}

void emit(const Table& table, const Options& o, const std::string& default_name) {
  const bool json = o.format == "json";
  if (!json && o.format != "csv") throw ConfigError("--format must be csv or json");
  std::string path = o.output;
  if (path.empty()) {
    if (const char* dir = std::getenv("FDLAP_OUTPUT_DIR"); dir && *dir)
      path = (std::filesystem::path(dir) / (default_name + (json ? ".json" : ".csv"))).string();
  }
  auto write = [&](std::ostream& os) {
    if (json) write_json(os, table, !o.no_timestamp);
    else write_csv(os, table, !o.no_timestamp);
  };
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file '" + path + "'");
  write(f);
  std::cerr << "wrote " << path << '\n';
}

// ---------------------------------------------------------------- kernel

int cmd_kernel(const Options& o) {
  const SignedOrder order(o.s);
  const auto src = parse_source(o.kernel);
  Table t;
  t.add_meta("command", "kernel");
  t.add_meta("order", o.s);
  t.add_meta("dim", std::to_string(o.dim));
  if (o.dim == 1) {
    if (o.n < 1) throw ConfigError("--n must be >= 1");
    const KernelTable table(order, o.n, src, std::min(o.crossover, o.n));
    t.add_meta("source", to_string(src));
    t.columns = {"m", "kernel", "main_term", "difference"};
    for (long m = 0; m <= o.n; ++m) {
      const double k = table[m];
      if (m == 0) {
        t.rows.push_back({m, k, std::string(), std::string()});
      } else {
        const double a = kernel1d_asymptotic(order, m);
        t.rows.push_back({m, k, a, k - a});
      }
    }
  } else if (o.dim == 2) {
    const auto s2 = src == KernelSource::closed_form ? KernelSource::hybrid : src;
    const Kernel2DTable table(order, o.radius, s2, std::min(o.crossover, o.radius));
    t.add_meta("source", to_string(s2));
    t.add_meta("radius", std::to_string(o.radius));
    t.columns = {"m1", "m2", "kernel", "main_term", "difference", "entry"};
    for (long a = 0; a <= o.radius; ++a)
      for (long b = 0; b <= a; ++b) {
        const double k = table(a, b);
        const std::string tag = to_string(table.tag(a, b));
        if (a == 0) {
          t.rows.push_back({a, b, k, std::string(), std::string(), tag});
        } else {
          const double m = kernel2d_asymptotic(order, a, b);
          t.rows.push_back({a, b, k, m, k - m, tag});
        }
      }
  } else {
    throw ConfigError("--dim must be 1 or 2");
  }
  emit(t, o, "kernel");
  return kOk;
}

// ---------------------------------------------------------------- apply / solve / heat

enum class Mode { apply, solve, heat };

int resolve_dim(const Options& o) {
  if (o.pair.empty()) return o.dim;
  if (o.pair == "riesz2d") return 2;
  if (o.pair == "ball-1s" || o.pair == "ball-2s") return o.dim;
  if (o.dim != 1) throw ConfigError("pair '" + o.pair + "' is one-dimensional");
  return 1;
}

TailMode resolve_tail(const Options& o, const SupportHint& hint, long max_index) {
  if (const auto t = parse_tail(o.tail)) return *t;
  if (hint.is_compact() && o.n >= max_index + hint.radius) return TailMode::zero;
  return TailMode::ignore;
}

template <std::size_t D>
void add_rows(Table& t, const GridValues<D>& g, const std::function<double(const std::array<double, D>&)>& exact,
              double& sup_err) {
  const auto& w = g.window;
  for (std::size_t p = 0; p < g.values.size(); ++p) {
    const auto j = w.index(p);
    const auto x = w.point(j);
    std::vector<Cell> row;
    for (std::size_t k = 0; k < D; ++k) row.emplace_back(j[k]);
    for (std::size_t k = 0; k < D; ++k) row.emplace_back(x[k]);
    row.emplace_back(g.values[p]);
    if (exact) {
      const double e = exact(x);
      row.emplace_back(e);
      row.emplace_back(g.values[p] - e);
      sup_err = std::max(sup_err, std::abs(g.values[p] - e));
    }
    t.rows.push_back(std::move(row));
  }
}

int run_grid(const Options& o, Mode mode, const std::string& default_name) {
  const int dim = resolve_dim(o);
  if (dim != 1 && dim != 2) throw ConfigError("--dim must be 1 or 2");
  if (o.pair.empty() == o.input.empty()) throw ConfigError("give exactly one of --pair or --input");
  const auto [lo, hi] = parse_range(o.range);
  const bool half = parse_offset(o.offset);
  if (!(o.h > 0.0)) throw ConfigError("--h must be positive");

  std::optional<SolutionPair> pair;
  if (!o.pair.empty()) {
    pair = make_pair(o.pair, o.s, dim, o.alpha);
    if (pair->name == "riesz2d" && !half)
      throw DomainError("pair riesz2d is singular at the origin; use --offset half");
  }
  std::optional<InputGrid> grid;
  if (!o.input.empty()) grid = read_grid_csv(o.input);

  Table t;
  t.add_meta("command", mode == Mode::apply ? "apply" : mode == Mode::solve ? "solve" : "heat");
  if (pair) t.add_meta("pair", pair->name);
  if (grid) t.add_meta("input", o.input);
  t.add_meta("dim", std::to_string(dim));
  if (mode == Mode::heat) t.add_meta("t", o.t);
  else t.add_meta("s", o.s);
  t.add_meta("h", o.h);
  t.add_meta("range", o.range);
  t.add_meta("offset", half ? "half" : "none");
  if (pair && pair->name == "riesz2d") t.add_meta("alpha", o.alpha);

  OperatorConfig cfg;
  if (mode != Mode::heat) {
    cfg.order = SignedOrder(mode == Mode::solve ? -o.s : o.s);
    cfg.N = o.n;
    cfg.M = o.m;
    cfg.source = parse_source(o.kernel);
    cfg.crossover = o.crossover;
  }
  HeatConfig hc;
  hc.t = o.t;

  const bool use_f = mode == Mode::solve;
  double sup_err = 0.0;
  auto finish_meta = [&](const SupportHint& hint, long max_index) {
    if (mode == Mode::heat) return;
    cfg.tail = resolve_tail(o, hint, max_index);
    t.add_meta("N", std::to_string(cfg.N));
    t.add_meta("tail", to_string(cfg.tail));
    if (cfg.tail == TailMode::sampled) t.add_meta("M", std::to_string(cfg.M));
    t.add_meta("kernel", to_string(cfg.source));
  };

  if (dim == 1) {
    const auto w = window_1d(o.h, lo, hi, half);
    std::optional<LatticeSampler<1>> data;
    std::function<double(const std::array<double, 1>&)> exact;
    if (pair) {
      const auto& in = use_f ? pair->f : pair->u;
      data = restrict_1d(in, w, use_f ? f_hint(*pair, o.h) : u_hint(*pair, o.h));
      if (mode != Mode::heat) {
        const auto out = use_f ? pair->u : pair->f;
        exact = [out](const std::array<double, 1>& x) { return out(x[0]); };
      }
    } else {
      data = grid_sampler<1>(*grid);
    }
    finish_meta(data->hint(), w.max_abs_index());
    const auto g = mode == Mode::heat    ? heat_apply(*data, w, hc)
                   : mode == Mode::solve ? apply_frint_1d(*data, w, cfg)
                                         : apply_frlap_1d(*data, w, cfg);
    t.columns = {"j", "x", "value"};
    if (exact) t.columns.insert(t.columns.end(), {"exact", "error"});
    add_rows<1>(t, g, exact, sup_err);
  } else {
    const auto w = window_2d(o.h, lo, hi, half);
    std::optional<LatticeSampler<2>> data;
    std::function<double(const std::array<double, 2>&)> exact;
    if (pair) {
      const auto& in = use_f ? pair->f2 : pair->u2;
      data = restrict_2d(in, w, use_f ? f_hint(*pair, o.h) : u_hint(*pair, o.h));
      if (mode != Mode::heat) {
        const auto out = use_f ? pair->u2 : pair->f2;
        exact = [out](const std::array<double, 2>& x) { return out(x[0], x[1]); };
      }
    } else {
      data = grid_sampler<2>(*grid);
    }
    finish_meta(data->hint(), w.max_abs_index());
    const auto g = mode == Mode::heat    ? heat_apply(*data, w, hc)
                   : mode == Mode::solve ? apply_frint_2d(*data, w, cfg)
                                         : apply_frlap_2d(*data, w, cfg);
    t.columns = {"j1", "j2", "x1", "x2", "value"};
    if (exact) t.columns.insert(t.columns.end(), {"exact", "error"});
    add_rows<2>(t, g, exact, sup_err);
  }
  if (pair && mode != Mode::heat) t.add_meta("sup_error", sup_err);
  emit(t, o, default_name);
  return kOk;
}

// ---------------------------------------------------------------- converge

int cmd_converge(const Options& o) {
  if (o.pair.empty()) throw ConfigError("converge needs --pair");
  const int dim = resolve_dim(o);
  const auto pair = make_pair(o.pair, o.s, dim, o.alpha);
  StudySetup st;
  st.window = o.window > 0 ? o.window : (dim == 1 ? 2.0 : 1.0);
  st.near = o.near > 0 ? o.near : (dim == 1 ? 10.0 : 2.0);
  st.far = o.far > 0 ? o.far : (dim == 1 ? 100.0 : 4.0);
  st.source = parse_source(o.kernel);
  st.origin_only = o.origin_only;
  st.half_offset = parse_offset(o.offset);
  if (const auto tm = parse_tail(o.tail)) st.tail = *tm;
  else st.tail = u_hint(pair, 1.0).is_compact() ? TailMode::zero : TailMode::sampled;
  const auto hs = o.h_list.empty() ? (dim == 1 ? std::vector<double>{0.2, 0.1, 0.05, 0.025}
                                               : std::vector<double>{0.2, 0.1, 0.05})
                                   : parse_list(o.h_list);
  const double exponent = o.exponent ? *o.exponent : theoretical_rate(pair.beta, 0, pair.s, o.level);
  const auto r = rate_study(pair, o.level, hs, st, exponent, o.slack);

  Table t;
  t.add_meta("command", "converge");
  t.add_meta("pair", r.pair);
  t.add_meta("dim", std::to_string(r.dim));
  t.add_meta("s", r.s);
  t.add_meta("level", std::to_string(r.level));
  t.add_meta("tail", r.tail);
  t.add_meta("near", r.near);
  if (st.tail == TailMode::sampled) t.add_meta("far", r.far);
  t.add_meta("window", st.window);
  t.add_meta("slope", r.slope);
  t.add_meta("exponent", r.exponent);
  t.add_meta("slack", r.slack);
  t.add_meta("degenerate", r.degenerate ? "true" : "false");
  t.add_meta("descriptive", r.descriptive ? "true" : "false");
  t.add_meta("pass", r.pass ? "true" : "false");
  if (!r.note.empty()) t.add_meta("note", r.note);
  t.columns = {"h", "error"};
  for (std::size_t i = 0; i < r.h.size(); ++i) t.rows.push_back({r.h[i], r.error[i]});
  emit(t, o, "converge");
  if (r.degenerate) {
    std::cerr << "degenerate study: " << r.note << '\n';
    return kStudy;
  }
  if (r.descriptive) return kOk;
  if (!r.pass) {
    std::cerr << "study failed: slope " << r.slope << " below " << r.exponent - r.slack << '\n';
    return kStudy;
  }
  return kOk;
}

// ---------------------------------------------------------------- figures

struct Preset {
  int id;
  const char* command;
  const char* pair;
  int dim;
  double s, h;
  long n;
  const char* range;
  const char* tail;
  bool half;
  const char* note;
};

// N = 30 for figures 5 and 7: the datum occupies |j| <= 10, so |j| <= 20 needs N >= 30 for an exact U2.
const std::vector<Preset>& presets() {
  static const std::vector<Preset> p{
      {1, "apply", "gaussian", 1, 0.25, 0.1, 1000, "-20:20", "ignore", false, "gaussian, far sum dropped"},
      {2, "apply", "algebraic", 1, 0.4, 0.1, 1000, "-50:50", "ignore", false, "algebraic pair, far sum dropped"},
      {3, "solve", "algebraic", 1, 0.4, 0.1, 1000, "-50:50", "ignore", false, "Poisson solve, far sum dropped"},
      {4, "apply", "ball-1s", 1, 0.25, 0.1, 1000, "-20:20", "ignore", false, "ball datum exponent 1-s"},
      {5, "solve", "ball-1s", 1, 0.25, 0.1, 30, "-20:20", "zero", false, "compact datum, exact"},
      {6, "apply", "ball-2s", 1, 0.25, 0.1, 1000, "-20:20", "ignore", false, "ball datum exponent 2-s"},
      {7, "solve", "ball-2s", 1, 0.25, 0.1, 30, "-20:20", "zero", false, "compact datum, exact"},
      {8, "apply", "ball-1s", 2, 0.25, 0.1, 500, "-20:20", "ignore", false, "2D ball exponent 1-s"},
      {9, "solve", "ball-1s", 2, 0.25, 0.1, 40, "-20:20", "zero", false, "2D compact datum, exact"},
      {10, "apply", "ball-2s", 2, 0.25, 0.1, 500, "-20:20", "ignore", false, "2D ball exponent 2-s"},
      {11, "solve", "ball-2s", 2, 0.25, 0.1, 40, "-20:20", "zero", false, "2D compact datum, exact"},
      {12, "apply", "riesz2d", 2, 0.3, 0.1, 500, "-21:20", "ignore", true, "alpha = 0.5, offset mesh"},
      {13, "solve", "riesz2d", 2, 0.3, 0.1, 500, "-21:20", "ignore", true, "alpha = 0.5, offset mesh"},
  };
  return p;
}

int cmd_figure(const Options& o) {
  if (o.list) {
    Table t;
    t.columns = {"figure", "command", "pair", "dim", "s", "h", "N", "range", "tail", "offset", "note"};
    for (const auto& p : presets())
      t.rows.push_back({long(p.id), std::string(p.command), std::string(p.pair), long(p.dim), p.s, p.h, p.n,
                        std::string(p.range), std::string(p.tail), std::string(p.half ? "half" : "none"),
                        std::string(p.note)});
    Options q = o;
    q.no_timestamp = true;
    emit(t, q, "figures");
    return kOk;
  }
  const auto it = std::find_if(presets().begin(), presets().end(), [&](const Preset& p) { return p.id == o.figure; });
  if (it == presets().end()) throw ConfigError("figure must be between 1 and 13");
  Options q = o;
  q.pair = it->pair;
  q.input.clear();
  q.dim = it->dim;
  q.s = it->s;
  q.h = it->h;
  q.n = it->n;
  q.range = it->range;
  q.tail = it->tail;
  q.offset = it->half ? "half" : "none";
  q.alpha = 0.5;
  q.kernel = "closed_form";
  const Mode mode = std::string(it->command) == "solve" ? Mode::solve : Mode::apply;
  return run_grid(q, mode, "figure" + std::to_string(it->id));
}

int cmd_pairs(const Options& o) {
  Table t;
  t.columns = {"name", "dim", "constraint"};
  t.rows = {{std::string("gaussian"), 1L, std::string("0 < s < 1")},
            {std::string("algebraic"), 1L, std::string("0 < s < 1/2")},
            {std::string("ball-1s"), 1L, std::string("0 < s < n/2, n = 1 or 2 (--dim)")},
            {std::string("ball-2s"), 1L, std::string("0 < s < n/2, n = 1 or 2 (--dim)")},
            {std::string("riesz2d"), 2L, std::string("0 < s < 1, 0 < alpha < 2 - 2s, --offset half")},
            {std::string("constant"), 1L, std::string("0 < s < 1")}};
  Options q = o;
  q.no_timestamp = true;
  emit(t, q, "pairs");
  return kOk;
}

void add_common(CLI::App* c, Options& o) {
  c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  c->add_option("--output", o.output, "output file ('-' for stdout; default: $FDLAP_OUTPUT_DIR or stdout)");
  c->add_flag("--no-timestamp", o.no_timestamp, "omit the generation timestamp line");
}

void add_grid(CLI::App* c, Options& o) {
  c->add_option("--h", o.h, "mesh size");
  c->add_option("--range", o.range, "index window lo:hi (each axis)");
  c->add_option("--offset", o.offset, "half or none");
  c->add_option("--dim", o.dim, "1 or 2");
  c->add_option("--pair", o.pair, "reference pair name");
  c->add_option("--alpha", o.alpha, "exponent of the riesz2d pair");
  c->add_option("--input", o.input, "CSV grid file (j,value or j1,j2,value)");
  add_common(c, o);
}

void add_operator(CLI::App* c, Options& o) {
  c->add_option("--s", o.s, "order s");
  c->add_option("--n", o.n, "truncation radius N");
  c->add_option("--tail", o.tail, "auto, zero, ignore or sampled");
  c->add_option("--m", o.m, "sampled tail radius M");
  c->add_option("--kernel", o.kernel, "closed_form, quadrature, asymptotic or hybrid");
  c->add_option("--crossover", o.crossover, "hybrid crossover radius");
  add_grid(c, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional powers of the discrete Laplacian on Z and Z^2"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  Options o;

  auto* kernel = app.add_subcommand("kernel", "dump a kernel table");
  kernel->add_option("--s", o.s, "order; negative values select the integral kernel")->required();
  kernel->add_option("--n", o.n, "1D radius");
  kernel->add_option("--radius", o.radius, "2D radius");
  kernel->add_option("--dim", o.dim, "1 or 2");
  kernel->add_option("--kernel", o.kernel, "closed_form, quadrature, asymptotic or hybrid");
  kernel->add_option("--crossover", o.crossover, "hybrid crossover radius");
  add_common(kernel, o);

  auto* apply = app.add_subcommand("apply", "apply (-Delta_h)^s");
  add_operator(apply, o);
  auto* solve = app.add_subcommand("solve", "apply (-Delta_h)^{-s}, s < 1/2");
  add_operator(solve, o);

  auto* heat = app.add_subcommand("heat", "apply the heat semigroup e^{t Delta_h}");
  heat->add_option("--t", o.t, "time");
  add_grid(heat, o);

  auto* conv = app.add_subcommand("converge", "consistency-rate study under h refinement");
  conv->add_option("--pair", o.pair, "reference pair")->required();
  conv->add_option("--s", o.s, "order s");
  conv->add_option("--dim", o.dim, "1 or 2");
  conv->add_option("--alpha", o.alpha, "exponent of the riesz2d pair");
  conv->add_option("--level", o.level, "derivative level l (0 or 1)");
  conv->add_option("--h-list", o.h_list, "comma-separated decreasing mesh sizes");
  conv->add_option("--window", o.window, "half width of the output window in x");
  conv->add_option("--near", o.near, "N h");
  conv->add_option("--far", o.far, "M h for the sampled tail");
  conv->add_option("--tail", o.tail, "auto, zero, ignore or sampled");
  conv->add_option("--kernel", o.kernel, "kernel source");
  conv->add_option("--offset", o.offset, "half or none");
  conv->add_option("--exponent", o.exponent, "expected rate (default beta - 2s - l)");
  conv->add_option("--slack", o.slack, "allowed shortfall of the fitted slope");
  conv->add_flag("--origin-only", o.origin_only, "measure the error at j = 0 only");
  add_common(conv, o);

  auto* fig = app.add_subcommand("figure", "dataset for one of the figure presets 1-13");
  fig->add_option("id", o.figure, "figure number");
  fig->add_flag("--list", o.list, "list the presets");
  add_common(fig, o);

  auto* pairs = app.add_subcommand("pairs", "list the reference pairs");
  add_common(pairs, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*kernel) return cmd_kernel(o);
    if (*apply) return run_grid(o, Mode::apply, "apply");
    if (*solve) return run_grid(o, Mode::solve, "solve");
    if (*heat) return run_grid(o, Mode::heat, "heat");
    if (*conv) return cmd_converge(o);
    if (*fig) {
      if (!o.list && o.figure == 0) throw ConfigError("figure needs an id (1-13) or --list");
      return cmd_figure(o);
    }
    if (*pairs) return cmd_pairs(o);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}
