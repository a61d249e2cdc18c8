#include "fvol/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fvol/io.hpp"
#include "fvol/minkowski.hpp"
#include "fvol/sampling.hpp"

namespace fvol {

namespace {

struct Tolerances {
  double cone = 1e-9;
  double area = 1e-8;
  double residual = 1e-11;
  double distinct = 1e-6;
};

void add_tolerance_flags(CLI::App* cmd, Tolerances& tol) {
  cmd->add_option("--tol-cone", tol.cone, "cone boundary band (relative)");
  cmd->add_option("--tol-area", tol.area, "facet-area tolerance (relative)");
  cmd->add_option("--tol-residual", tol.residual,
                  "normal-sum residual tolerance (relative)");
  cmd->add_option("--tol-distinct", tol.distinct,
                  "minimum chordal distance between normals");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

std::vector<double> parse_number_stream(const std::string& text) {
  std::istringstream is(text);
  std::vector<double> values;
  double x = 0.0;
  while (is >> x) values.push_back(x);
  if (!is.eof())
    throw std::invalid_argument("input is not a whitespace number list");
  return values;
}

Vec to_vec(const std::vector<double>& values) {
  Vec v(values.size());
  for (size_t i = 0; i < values.size(); ++i) v[i] = values[i];
  return v;
}

// alpha from positional numbers, or from a file holding a JSON array,
// {"alpha": [...]}, or a whitespace number list
Vec read_alpha(const std::vector<double>& inline_values,
               const std::string& in_path) {
  if (!inline_values.empty()) return to_vec(inline_values);
  if (in_path.empty())
    throw std::invalid_argument("no input: pass numbers or --in FILE");
  const std::string text = slurp(in_path);
  if (looks_like_json(text)) {
    const Json j = Json::parse(text);
    if (j.is_array()) return vec_from_json(j);
    if (j.contains("alpha")) return vec_from_json(j.at("alpha"));
    throw std::invalid_argument("json input has no 'alpha' field");
  }
  return to_vec(parse_number_stream(text));
}

struct SimplexInput {
  int dim = 0;
  std::vector<Vec> vertices;
};

SimplexInput read_simplex(const std::vector<double>& inline_values,
                          const std::string& in_path, int dim_flag) {
  std::vector<double> flat = inline_values;
  int dim = dim_flag;
  if (flat.empty()) {
    if (in_path.empty())
      throw std::invalid_argument("no input: pass coordinates or --in FILE");
    const std::string text = slurp(in_path);
    if (looks_like_json(text)) {
      const Json j = Json::parse(text);
      if (j.contains("d")) dim = j.at("d").get<int>();
      if (!j.contains("vertices"))
        throw std::invalid_argument("json input has no 'vertices' field");
      if (dim <= 0) throw std::invalid_argument("missing dimension");
      return {dim, points_from_json(j.at("vertices"), dim)};
    }
    flat = parse_number_stream(text);
  }
  if (dim <= 0) throw std::invalid_argument("--d is required");
  if (flat.size() % dim != 0)
    throw std::invalid_argument("coordinate count is not a multiple of d");
  std::vector<Vec> pts;
  for (size_t i = 0; i < flat.size(); i += dim) {
    Vec p(dim);
    for (int k = 0; k < dim; ++k) p[k] = flat[i + k];
    pts.push_back(std::move(p));
  }
  return {dim, std::move(pts)};
}

std::string shape_token(const ShapeClass& s) {
  switch (s.kind) {
    case ShapeClass::Kind::Acute:
      return "acute";
    case ShapeClass::Kind::Right:
      return "right:" + std::to_string(s.index);
    case ShapeClass::Kind::Obtuse:
      return "obtuse:" + std::to_string(s.index);
  }
  return "?";
}

std::string join17(const Vec& v, const char* sep = " ") {
  std::string out;
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += fmt17(v[i]);
  }
  return out;
}

// writes either to --out or to the command stream
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

int cmd_volumes(const SimplexInput& in, const Tolerances& tol,
                std::ostream& out) {
  const FacetVolumeVector f =
      facet_volume_vector({in.dim, in.vertices});
  const ShapeClass shape = classify(f, tol.cone);
  const ConeVerdict verdict = cone_membership(f.values, tol.cone);
  out << join17(f.values) << " | " << shape.str() << " | " << verdict.str()
      << "\n";
  return 0;
}

int cmd_classify(const Vec& alpha, const Tolerances& tol, std::ostream& out) {
  FacetVolumeVector f{static_cast<int>(alpha.size()) - 1, alpha};
  out << classify(f, tol.cone).str() << "\n";
  return 0;
}

int cmd_membership(const Vec& alpha, const Tolerances& tol,
                   std::ostream& out) {
  const ConeVerdict verdict = cone_membership(alpha, tol.cone);
  out << verdict.str() << "\n";
  return verdict.region == Region::Inside ? 0 : 3;
}

int cmd_solve_normals(const Vec& alpha, int dim, std::uint64_t seed,
                      const Tolerances& tol, Sink& sink) {
  Rng rng(seed);
  SolveOptions opts;
  opts.residual_tol = tol.residual;
  opts.distinct_tol = tol.distinct;
  opts.cone_tol = tol.cone;
  const UnitNormalSystem sys = solve_normals(alpha, dim, rng, opts);
  sink.stream() << system_to_json(sys).dump(2) << "\n";
  return 0;
}

int cmd_reconstruct(const std::string& in_path, const Tolerances& tol,
                    Sink& sink) {
  if (in_path.empty())
    throw std::invalid_argument("reconstruct needs --in FILE");
  const UnitNormalSystem sys = system_from_json(Json::parse(slurp(in_path)));
  ReconstructOptions opts;
  opts.area_tol = tol.area;
  const ReconstructResult res = reconstruct(sys, opts);
  sink.stream() << polytope_to_json(res.hull, res.geometry).dump(2) << "\n";
  return 0;
}

int cmd_roundtrip(const Vec& alpha, int dim, std::uint64_t seed,
                  const Tolerances& tol, Sink& sink) {
  Json report;
  report["d"] = dim;
  report["alpha"] = vec_to_json(alpha);
  report["seed"] = seed;

  const ConeVerdict verdict = cone_membership(alpha, tol.cone);
  report["membership"] = {{"verdict", region_str(verdict.region)},
                          {"margin", verdict.margin},
                          {"violation", verdict.violation},
                          {"index", verdict.index}};
  if (verdict.region != Region::Inside) {
    report["rejected"] = true;
    sink.stream() << report.dump(2) << "\n";
    return 3;
  }

  Rng rng(seed);
  SolveOptions sopts;
  sopts.residual_tol = tol.residual;
  sopts.distinct_tol = tol.distinct;
  sopts.cone_tol = tol.cone;
  const UnitNormalSystem sys = solve_normals(alpha, dim, rng, sopts);
  const SystemDiagnostics diag = system_diagnostics(sys);
  report["solve"] = {{"residual", diag.residual},
                     {"min_pairwise_distance", diag.min_pairwise_distance},
                     {"rank", diag.rank}};

  ReconstructOptions ropts;
  ropts.area_tol = tol.area;
  const ReconstructResult res = reconstruct(sys, ropts);
  report["reconstruct"] = {{"iterations", res.iterations},
                           {"max_rel_area_error", res.max_rel_error},
                           {"volume", res.geometry.volume}};

  const FacetVolumeVector back = facet_volume_vector_of_polytope(res.hull);
  double max_rel = 0.0;
  for (int i = 0; i < alpha.size(); ++i)
    max_rel = std::max(max_rel, std::abs(back.values[i] - alpha[i]) / alpha[i]);
  const bool ok = max_rel <= 1e-6;
  report["compare"] = {{"facet_volumes", vec_to_json(back.values)},
                       {"max_rel_error", max_rel},
                       {"ok", ok}};
  report["ok"] = ok;
  sink.stream() << report.dump(2) << "\n";
  return ok ? 0 : 4;
}

int cmd_sample(int dim, long long count, std::uint64_t seed,
               const std::string& format, const Tolerances& tol, Sink& sink,
               std::ostream& summary_stream) {
  if (dim < 2) throw std::invalid_argument("sample: --d must be >= 2");
  if (count < 1) throw std::invalid_argument("sample: --count must be >= 1");

  long long acute = 0, obtuse = 0, right = 0;
  std::ostream& os = sink.stream();
  if (format == "csv") {
    for (int i = 0; i < dim + 1; ++i) os << "s" << (i + 1) << ",";
    os << "class,seed_index\n";
  } else {
    os << "[\n";
  }
  for (long long i = 0; i < count; ++i) {
    const SampleRecord rec = make_sample_record(dim, seed, i, tol.cone);
    switch (rec.shape.kind) {
      case ShapeClass::Kind::Acute:
        ++acute;
        break;
      case ShapeClass::Kind::Right:
        ++right;
        break;
      case ShapeClass::Kind::Obtuse:
        ++obtuse;
        break;
    }
    if (format == "csv") {
      os << join17(rec.normalized_squared, ",") << ","
         << shape_token(rec.shape) << "," << rec.seed_index << "\n";
    } else {
      Json j;
      j["squared_volumes"] = vec_to_json(rec.squared_volumes);
      j["normalized_squared"] = vec_to_json(rec.normalized_squared);
      j["class"] = shape_token(rec.shape);
      j["seed_index"] = rec.seed_index;
      os << "  " << j.dump() << (i + 1 < count ? ",\n" : "\n");
    }
  }
  if (format != "csv") os << "]\n";

  // Right-boundary simplices count toward the obtuse tally
  const double fraction = static_cast<double>(acute) / count;
  summary_stream << "count=" << count << " acute=" << acute
                 << " obtuse=" << (obtuse + right) << " right=" << right
                 << " acute_fraction=" << fmt17(fraction) << "\n";
  return 0;
}

int cmd_polar(int n, Sink& sink) {
  const CenteredBody pb = build_p(n);
  const HPolytope polar = polar_dual(pb.body);
  const VPolytope polar_verts = enumerate_vertices(polar);

  auto to_ambient = [&](const std::vector<Vec>& pts) {
    std::vector<Vec> out;
    out.reserve(pts.size());
    for (const Vec& p : pts) out.push_back(pb.chart.to_ambient(p));
    return out;
  };

  Json j;
  j["n"] = n;
  Json basis = Json::array();
  for (int c = 0; c < pb.chart.basis.cols(); ++c)
    basis.push_back(vec_to_json(pb.chart.basis.col(c)));
  j["wn_basis"] = basis;
  j["P"] = {{"vertices_wn", points_to_json(pb.body.vertices)},
            {"vertices_ambient", points_to_json(to_ambient(pb.body.vertices))}};
  j["polar"] = {
      {"halfspace_normals_wn", points_to_json(polar.normals)},
      {"halfspace_offsets", vec_to_json(polar.offsets)},
      {"vertices_wn", points_to_json(polar_verts.vertices)},
      {"vertices_ambient", points_to_json(to_ambient(polar_verts.vertices))}};

  Json audit;
  audit["vertex_count"] = static_cast<int>(pb.body.vertices.size());
  audit["polar_vertex_count"] = static_cast<int>(polar_verts.vertices.size());
  audit["bipolar_ok"] = bipolar_check(pb.body);
  if (n == 3) {
    audit["negative_simplex_absorbed"] = pb.body.vertices.size() == 3;
    audit["neg_scaled_simplex_in_hull"] =
        negative_simplex_contained(3, 3.0, 6.0);
  }
  if (n == 4) {
    const CubeAudit cube = cube_audit();
    audit["is_cube"] = cube.is_cube;
    audit["polar_is_regular_octahedron"] = cube.polar_is_regular_octahedron;
    audit["edge_count"] = cube.edge_count;
    audit["vertex_radius_spread"] = cube.vertex_radius_spread;
    audit["edge_length_spread"] = cube.edge_length_spread;
    audit["polar_radius_spread"] = cube.polar_radius_spread;
  }
  j["audit"] = audit;
  sink.stream() << j.dump(2) << "\n";
  return 0;
}

int cmd_latitude(long long count, std::uint64_t seed, Sink& sink) {
  const LatitudeReport rep = latitude_check(static_cast<int>(count), seed);
  Json j;
  j["circles"] = rep.circles;
  j["points_per_circle"] = rep.points_per_circle;
  j["max_area_spread"] = rep.max_area_spread;
  j["max_identity_error"] = rep.max_identity_error;
  j["ok"] = true;
  sink.stream() << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"facet-volume geometry toolkit"};
  app.require_subcommand(1);

  int dim = 0;
  int n_flag = 0;
  long long count = 100;
  std::uint64_t seed = 0;
  std::string in_path, out_path;
  std::string format = "csv";
  Tolerances tol;
  std::vector<double> numbers;

  auto add_common = [&](CLI::App* cmd, bool wants_numbers) {
    cmd->add_option("--d", dim, "ambient dimension");
    cmd->add_option("--n", n_flag, "number of facets / coordinates");
    cmd->add_option("--count", count, "number of samples or circles");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--in", in_path, "input file (json or numbers)");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    add_tolerance_flags(cmd, tol);
    if (wants_numbers)
      cmd->add_option("values", numbers, "inline numeric input");
  };

  CLI::App* volumes = app.add_subcommand(
      "volumes", "facet volumes, shape class, cone verdict of a simplex");
  add_common(volumes, true);
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "shape class of a facet-volume vector");
  add_common(classify_cmd, true);
  CLI::App* membership =
      app.add_subcommand("membership", "cone membership of a volume vector");
  add_common(membership, true);
  CLI::App* solve = app.add_subcommand(
      "solve-normals", "unit normals with prescribed weighted zero sum");
  add_common(solve, true);
  CLI::App* reconstruct_cmd = app.add_subcommand(
      "reconstruct", "polytope with prescribed normals and facet volumes");
  add_common(reconstruct_cmd, false);
  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "membership -> normals -> polytope -> volumes check");
  add_common(roundtrip, true);
  CLI::App* sample = app.add_subcommand(
      "sample", "gaussian simplex samples in squared facet-volume coords");
  add_common(sample, false);
  CLI::App* polar_cmd =
      app.add_subcommand("polar", "centered body and its polar for given n");
  add_common(polar_cmd, false);
  CLI::App* latitude = app.add_subcommand(
      "latitude-check", "equal-area latitude circles of triangle space");
  add_common(latitude, false);

  std::vector<const char*> argv;
  argv.push_back("fvol");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    const int code = app.exit(e, os, os);
    (code == 0 ? out : err) << os.str();
    return code == 0 ? 0 : 1;
  }

  try {
    Sink sink(out_path, out);
    if (volumes->parsed())
      return cmd_volumes(read_simplex(numbers, in_path, dim), tol,
                         sink.stream());
    if (classify_cmd->parsed())
      return cmd_classify(read_alpha(numbers, in_path), tol, sink.stream());
    if (membership->parsed())
      return cmd_membership(read_alpha(numbers, in_path), tol, sink.stream());
    if (solve->parsed()) {
      const Vec alpha = read_alpha(numbers, in_path);
      if (dim <= 0) throw std::invalid_argument("solve-normals needs --d");
      return cmd_solve_normals(alpha, dim, seed, tol, sink);
    }
    if (reconstruct_cmd->parsed()) return cmd_reconstruct(in_path, tol, sink);
    if (roundtrip->parsed()) {
      const Vec alpha = read_alpha(numbers, in_path);
      if (dim <= 0) throw std::invalid_argument("roundtrip needs --d");
      return cmd_roundtrip(alpha, dim, seed, tol, sink);
    }
    if (sample->parsed())
      return cmd_sample(dim, count, seed, format, tol, sink,
                        sink.to_file() ? out : err);
    if (polar_cmd->parsed()) {
      const int n = n_flag > 0 ? n_flag : (dim > 0 ? dim + 1 : 0);
      if (n < 3) throw std::invalid_argument("polar needs --n >= 3");
      return cmd_polar(n, sink);
    }
    if (latitude->parsed()) return cmd_latitude(count, seed, sink);
    err << "error: no command\n";
    return 1;
  } catch (const ConeViolation& e) {
    err << "rejected: " << e.what() << "\n";
    return 3;
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const GenericityExhausted& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const NoProgress& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const AssertionFailure& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const SamplingFailure& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const InternalError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: bad json input: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fvol
