// mixtype: evaluate, trace, verify and export mixed-type surfaces.
//
//   mixtype analyze --surface fK --window -3:3:-3:3 --res 100x100 --out field.csv
//   mixtype trace   --surface construction:c=0.01 --out sigma
//   mixtype verify  --suite all
//   mixtype export  --surface fZ --drop 0 --out fz.obj
//
// Exit status: 0 success, 1 verification failure or degenerate traced vertex,
// 2 usage or configuration error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixtype/mixtype.hpp"
#include "mixtype/parallel.hpp"
#include "mixtype/verify.hpp"

using namespace mixtype;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string surface = "fK";
  std::string window = "-3:3:-3:3";
  std::string res = "100x100";
  std::string out;
  std::string format;
  std::optional<double> tol;
  std::optional<int> drop;
  std::string suite = "all";
};

struct Grid {
  Rect window;
  int nu = 0, nv = 0;

  ParamPoint at(int i, int j) const {
    return {window.u0 + window.width() * i / (nu - 1), window.v0 + window.height() * j / (nv - 1)};
  }
};

Rect parse_window(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("--window: cannot parse '" + item + "'");
    }
  }
  if (v.size() != 4) throw UsageError("--window expects u0:u1:v0:v1");
  const Rect r{v[0], v[1], v[2], v[3]};
  if (!r.is_valid() || !std::isfinite(r.width()) || !std::isfinite(r.height()))
    throw UsageError("--window must be a non-degenerate finite rectangle");
  return r;
}

std::pair<int, int> parse_res(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("--res expects NxM");
  try {
    std::size_t a = 0, b = 0;
    const std::string l = text.substr(0, x), r = text.substr(x + 1);
    const int n = std::stoi(l, &a), m = std::stoi(r, &b);
    if (a != l.size() || b != r.size()) throw std::invalid_argument(text);
    if (n < 2 || m < 2) throw UsageError("--res needs at least 2 points per axis");
    return {n, m};
  } catch (const std::logic_error&) {
    throw UsageError("--res: cannot parse '" + text + "'");
  }
}

Grid make_grid(const RunConfig& cfg) {
  Grid g;
  g.window = parse_window(cfg.window);
  std::tie(g.nu, g.nv) = parse_res(cfg.res);
  return g;
}

SurfaceDef load_surface(const std::string& id) {
  try {
    if (id.rfind("graph:", 0) == 0) return Expression::from_file(id.substr(6)).as_surface(id);
    if (id.rfind("expr:", 0) == 0) return Expression::parse(id.substr(5)).as_surface(id);
    return gallery::make_surface(gallery::parse_gallery_id(id));
  } catch (const Error& e) {
    throw UsageError(std::string("--surface: ") + e.what());
  }
}

std::string num(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
  std::ofstream file_;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file: " + path);
  f << text;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const RunConfig& cfg) {
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  if (format != "csv" && format != "json") throw UsageError("analyze supports --format csv or json");
  const SurfaceDef s = load_surface(cfg.surface);
  const Grid g = make_grid(cfg);
  struct Row {
    ParamPoint p;
    double beta = 0, alpha = 0;
    std::optional<double> H;
    PointCausality causal = PointCausality::degenerate;
  };
  std::vector<Row> rows(static_cast<std::size_t>(g.nu) * g.nv);
  try {
    parallel_for(static_cast<std::size_t>(g.nv), [&](std::size_t j) {
      for (int i = 0; i < g.nu; ++i) {
        Row& r = rows[j * g.nu + i];
        r.p = g.at(i, static_cast<int>(j));
        const Jet2 jet = eval_jet(s, r.p);
        const FundamentalData fd = first_fundamental(s.space, jet);
        r.beta = fd.beta;
        r.alpha = alpha_extended(s.space, jet);
        const bool degenerate = cfg.tol ? std::abs(fd.beta) <= *cfg.tol : is_degenerate(fd);
        r.causal = degenerate ? PointCausality::degenerate : classify(fd);
        if (!degenerate) r.H = mean_curvature(s.space, jet);
      }
    });
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  Output out(cfg.out);
  std::ostream& os = out.stream();
  if (format == "csv") {
    os << "u,v,beta,alpha,H,causal_class\n";
    for (const Row& r : rows)
      os << num(r.p.u) << ',' << num(r.p.v) << ',' << num(r.beta) << ',' << num(r.alpha) << ','
         << (r.H ? num(*r.H) : "") << ',' << to_string(r.causal) << '\n';
  } else {
    json arr = json::array();
    for (const Row& r : rows) {
      arr.push_back({{"u", r.p.u}, {"v", r.p.v}, {"beta", r.beta}, {"alpha", r.alpha},
                     {"H", r.H ? json(*r.H) : json(nullptr)}, {"causal_class", to_string(r.causal)}});
    }
    os << json{{"surface", s.name}, {"rows", arr}}.dump(1) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_trace(const RunConfig& cfg) {
  if (!cfg.format.empty() && cfg.format != "csv") throw UsageError("trace writes csv curve files");
  const SurfaceDef s = load_surface(cfg.surface);
  const Grid g = make_grid(cfg);
  if (g.nu < 8 || g.nv < 8) throw UsageError("trace needs --res of at least 8x8");
  TypeChangeTolerances tol;
  if (cfg.tol) tol.B = *cfg.tol;

  std::vector<CharacteristicCurve> curves;
  try {
    if (s.is_graph()) {
      curves = trace_characteristic_curves(s.graph_scalar, g.window, g.nu - 1, g.nv - 1, tol);
    } else {
      const ScalarField field = beta_field(s);
      curves = trace_zero_set(
          field, g.window, g.nu - 1, g.nv - 1,
          [&](ParamPoint p) {
            const FieldSample f = field(p);
            TypeChangeClass c;
            c.B = f.value;
            c.gradB = f.grad;
            c.kind = std::abs(f.value) > tol.B ? TypeChangeKind::not_type_change
                     : std::hypot(f.grad[0], f.grad[1]) > tol.grad ? TypeChangeKind::nondegenerate
                                                                    : TypeChangeKind::degenerate;
            return c;
          },
          tol);
      for (auto& c : curves)
        for (const auto& p : c.vertices) c.ambient_trace.push_back(s.position(p));
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  const AmbientSpace R31 = AmbientSpace::minkowski3();
  json summary{{"surface", s.name}, {"window", cfg.window}, {"res", cfg.res}};
  json jcurves = json::array();
  std::size_t degenerate_total = 0;
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const CharacteristicCurve& c = curves[k];
    std::size_t degenerate = 0;
    for (const auto& t : c.classifications) degenerate += t.kind != TypeChangeKind::nondegenerate;
    degenerate_total += degenerate;
    json jc{{"index", k}, {"vertices", c.vertices.size()}, {"closed", c.closed}, {"degenerate_vertices", degenerate}};

    std::ostringstream csv;
    const bool graph = s.is_graph();
    csv << "s,u,v,B,class" << (graph ? ",Hnu_t,Hnu_x,Hnu_y" : "") << '\n';
    double worst_light = 0.0, min_norm = std::numeric_limits<double>::infinity();
    std::size_t divergent = 0;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      csv << num(c.arclength[i]) << ',' << num(c.vertices[i].u) << ',' << num(c.vertices[i].v) << ','
          << num(c.values[i]) << ',' << to_string(c.classifications[i].kind);
      if (graph) {
        try {
          const AmbientVector V = extended_mean_curvature_vector(s, c.vertices[i], tol.grad);
          const double n2 = V.euclidean_norm() * V.euclidean_norm();
          min_norm = std::min(min_norm, V.euclidean_norm());
          if (n2 > 0.0) worst_light = std::max(worst_light, std::abs(inner(R31, V, V)) / n2);
          csv << ',' << num(V[0]) << ',' << num(V[1]) << ',' << num(V[2]);
        } catch (const Error&) {
          ++divergent;
          csv << ",,,";
        }
      }
      csv << '\n';
    }
    if (graph) {
      try {
        const NullCurveReport nr = characteristic_null_report(s.graph_scalar, c, tol);
        jc["null_report"] = {{"max_null_residual", nr.max_null_residual},
                             {"min_independence", nr.min_independence},
                             {"samples", nr.samples},
                             {"verdict", to_string(nr.verdict)}};
      } catch (const Error& e) {
        jc["null_report"] = {{"error", e.what()}};
      }
      jc["extended_mean_curvature"] = {{"max_lightlike_residual", worst_light},
                                       {"min_norm", std::isfinite(min_norm) ? json(min_norm) : json(nullptr)},
                                       {"divergent_vertices", divergent}};
    }
    jcurves.push_back(jc);

    if (!cfg.out.empty()) {
      write_text(cfg.out + ".curve" + std::to_string(k) + ".csv", csv.str());
      std::ostringstream amb;
      amb << (c.ambient_trace.empty() || c.ambient_trace.front().size() == 3 ? "s,t,x,y\n" : "s,x0,x1,x2,x3\n");
      for (std::size_t i = 0; i < c.ambient_trace.size(); ++i) {
        amb << num(c.arclength[i]);
        for (double x : c.ambient_trace[i].components()) amb << ',' << num(x);
        amb << '\n';
      }
      write_text(cfg.out + ".curve" + std::to_string(k) + ".ambient.csv", amb.str());
    }
  }
  summary["curves"] = jcurves;
  summary["degenerate_vertices"] = degenerate_total;
  const std::string text = summary.dump(1) + "\n";
  if (!cfg.out.empty()) write_text(cfg.out + ".summary.json", text);
  std::cout << text;
  return degenerate_total > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------

json report_json(const verify::Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"criterion", c.criterion},
                      {"measured", std::isfinite(c.measured) ? json(c.measured) : json(nullptr)},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass},
                      {"detail", c.detail},
                      {"seconds", c.seconds}});
  }
  return {{"suite", r.suite}, {"pass", r.pass}, {"seconds", r.seconds}, {"checks", checks}};
}

int cmd_verify(const RunConfig& cfg) {
  if (!cfg.format.empty() && cfg.format != "json") throw UsageError("verify reports are json");
  std::vector<std::string> suites;
  if (cfg.suite == "all") {
    for (auto n : verify::suite_names()) suites.emplace_back(n);
  } else {
    bool known = false;
    for (auto n : verify::suite_names()) known = known || n == cfg.suite;
    if (!known) throw UsageError("unknown suite '" + cfg.suite + "'");
    suites.push_back(cfg.suite);
  }
  json reports = json::array();
  bool pass = true;
  double seconds = 0.0;
  for (const auto& name : suites) {
    const verify::Report r = verify::run_suite(name);
    pass = pass && r.pass;
    seconds += r.seconds;
    reports.push_back(report_json(r));
  }
  const json doc = suites.size() == 1 ? reports.front()
                                      : json{{"suite", "all"}, {"pass", pass}, {"seconds", seconds}, {"suites", reports}};
  Output out(cfg.out);
  out.stream() << doc.dump(1) << '\n';
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_export(const RunConfig& cfg) {
  if (!cfg.format.empty() && cfg.format != "obj") throw UsageError("export writes obj");
  const SurfaceDef s = load_surface(cfg.surface);
  const Grid g = make_grid(cfg);
  const std::size_t dim = s.space.ambient_dim;
  if (dim == 4 && !cfg.drop) throw UsageError("4-dimensional ambient space: choose --drop 0..3");
  if (cfg.drop && (*cfg.drop < 0 || static_cast<std::size_t>(*cfg.drop) >= dim || dim != 4))
    throw UsageError("unsupported projection: --drop applies to 4-dimensional surfaces, index 0..3");

  struct Vertex {
    std::array<double, 3> x{};
    PointCausality causal = PointCausality::degenerate;
  };
  std::vector<Vertex> verts(static_cast<std::size_t>(g.nu) * g.nv);
  try {
    parallel_for(static_cast<std::size_t>(g.nv), [&](std::size_t j) {
      for (int i = 0; i < g.nu; ++i) {
        Vertex& vx = verts[j * g.nu + i];
        const ParamPoint p = g.at(i, static_cast<int>(j));
        const Jet2 jet = eval_jet(s, p);
        const FundamentalData fd = first_fundamental(s.space, jet);
        vx.causal = is_degenerate(fd) ? PointCausality::degenerate : classify(fd);
        int out = 0;
        for (std::size_t c = 0; c < dim; ++c)
          if (!cfg.drop || static_cast<int>(c) != *cfg.drop) vx.x[out++] = jet.pos[c];
      }
    });
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  auto colour = [](PointCausality c) {
    switch (c) {
    case PointCausality::spacelike: return "0.2 0.4 1";
    case PointCausality::timelike: return "1 0.3 0.2";
    case PointCausality::degenerate: return "0.1 0.1 0.1";
    }
    return "0 0 0";
  };
  Output out(cfg.out);
  std::ostream& os = out.stream();
  os << "# mixtype export " << s.name << " window " << cfg.window << " res " << cfg.res << '\n';
  if (cfg.drop) os << "# projection drops ambient coordinate " << *cfg.drop << '\n';
  os << "# vertex colours: spacelike " << colour(PointCausality::spacelike) << ", timelike "
     << colour(PointCausality::timelike) << ", degenerate " << colour(PointCausality::degenerate) << '\n';
  for (const Vertex& v : verts)
    os << "v " << num(v.x[0]) << ' ' << num(v.x[1]) << ' ' << num(v.x[2]) << ' ' << colour(v.causal) << '\n';
  for (int j = 0; j + 1 < g.nv; ++j) {
    for (int i = 0; i + 1 < g.nu; ++i) {
      const int a = j * g.nu + i + 1, b = a + 1, c = a + g.nu + 1, d = a + g.nu;
      os << "f " << a << ' ' << b << ' ' << c << '\n' << "f " << a << ' ' << c << ' ' << d << '\n';
    }
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature and type-change analysis of surfaces in Lorentzian space forms"};
  app.set_config("--config", "", "INI/TOML file with option values; flags override it");
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--surface", cfg.surface, "gallery id (fP, fH, fK, fZ, fAds:alpha=A, construction:c=C), "
                                              "graph:PATH or expr:TEXT")
        ->capture_default_str();
    sub->add_option("--window", cfg.window, "u0:u1:v0:v1")->capture_default_str();
    sub->add_option("--res", cfg.res, "grid points NxM along u and v")->capture_default_str();
    sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
    sub->add_option("--format", cfg.format, "csv, obj or json");
    sub->add_option("--tol", cfg.tol, "degeneracy tolerance on |beta| (or |B| when tracing)");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "beta, alpha, H and causal class over a grid");
  CLI::App* trace = app.add_subcommand("trace", "trace the type-change set and check its null curves");
  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  CLI::App* exporter = app.add_subcommand("export", "write a triangulated OBJ mesh");
  common(analyze);
  common(trace);
  common(exporter);
  verify->add_option("--suite,suite", cfg.suite, "spaceform, jets, cmc, zmc, forms, typechange, theorem1, "
                                                  "construction or all")
      ->capture_default_str();
  verify->add_option("--out", cfg.out, "report path (stdout when omitted)");
  verify->add_option("--format", cfg.format, "json");
  exporter->add_option("--drop", cfg.drop, "ambient coordinate dropped for 4-dimensional surfaces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) return cmd_analyze(cfg);
    if (*trace) return cmd_trace(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*exporter) return cmd_export(cfg);
  } catch (const UsageError& e) {
    std::cerr << "mixtype: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mixtype: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
