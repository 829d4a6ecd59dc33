#include "cli.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "CLI11.hpp"
#include "polyiso/error.hpp"
#include "polyiso/gallery.hpp"
#include "polyiso/mesh.hpp"
#include "polyiso/polytope.hpp"
#include "polyiso/profiles.hpp"
#include "polyiso/simplex_slicing.hpp"
#include "polyiso/smoothing.hpp"
#include "polyiso/solver.hpp"
#include "polyiso/vertex_cones.hpp"
#include "svg.hpp"

namespace polyiso::cli {
namespace fs = std::filesystem;
namespace {

const std::set<std::string> kCommands = {"analyze", "slice", "smooth", "profile", "solve", "gallery"};
const std::set<std::string> kGalleries = {"double-pyramid", "spiked-cone", "cube-competitors"};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.15g}", v);
}

std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string join_ints(const std::vector<int>& k) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? " " : "") + std::to_string(k[i]);
  return s;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::BadDocument, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Common {
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool svg = false;
};

// Everything a run depends on; the digest covers all of it.
struct Run {
  std::string command;
  std::string flags;
  Common common;
  std::string input_digest = "none";
  std::ostream* out = nullptr;

  std::string header() const {
    const std::string body = fmt::format("command={} version={} seed={} input_sha256={} flags=\"{}\"", command,
                                         kVersion, common.seed, input_digest, flags);
    return fmt::format("# manifest {} digest={}\n", body, sha256_hex(body));
  }

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path dir(common.out_dir);
    fs::create_directories(dir);
    const fs::path path = dir / name;
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorKind::BadArgument, "cannot write " + path.string());
    file << text;
    return path;
  }

  fs::path write_csv(const std::string& name, const std::string& columns, const std::vector<std::string>& rows,
                     const std::vector<std::string>& summary = {}) const {
    std::string text = header() + columns + "\n";
    for (const auto& r : rows) text += r + "\n";
    for (const auto& s : summary) text += "# " + s + "\n";
    return write(name, text);
  }

  Polytope load(const std::string& path) {
    const std::string bytes = read_bytes(path);
    input_digest = sha256_hex(bytes);
    return load_polytope(bytes);
  }
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--out", common.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--seed", common.seed, "Random seed")->capture_default_str();
  cmd->add_flag("--svg", common.svg, "Also write an SVG plot");
}

// ---- analyze

struct AnalyzeArgs {
  std::string polytope;
};

void run_analyze(Run& run, const AnalyzeArgs& a) {
  const Polytope polytope = run.load(a.polytope);
  const auto cones = vertex_cones(polytope);
  const OptimalVertex best = optimal_vertex(polytope);
  const int n = polytope.surface_dim();
  std::vector<std::string> rows;
  for (const auto& cone : cones) {
    const PowerLawProfile p = apex_ball_profile(cone);
    rows.push_back(fmt::format("{},{},{},{},{},{},{}", cone.vertex_index, num(cone.link_volume), num(cone.r_max),
                               num(p.coefficient), num(p.exponent), num(p.valid_volume_max),
                               cone.vertex_index == best.vertex ? 1 : 0));
  }
  std::vector<std::string> summary = {
      fmt::format("optimal_vertex={} omega_min={} coefficient={}", best.vertex,
                  num(cones[static_cast<std::size_t>(best.vertex)].link_volume), num(best.profile.coefficient)),
      fmt::format("exponent (n-1)/n={} printed_exponent (n-2)/(n-1)={}", num(best.profile.exponent),
                  num(printed_exponent(n)))};
  if (polytope.ambient_dim() == 3) summary.push_back(fmt::format("deficit_sum={}", num(deficit_sum(polytope))));
  const auto path =
      run.write_csv("analyze.csv", "vertex_index,omega,r_max,c,t,valid_volume_max,is_optimal", rows, summary);
  *run.out << fmt::format("{} vertices, optimal vertex {} (omega {})\nwrote {}\n", cones.size(), best.vertex,
                          num(cones[static_cast<std::size_t>(best.vertex)].link_volume), path.string());
}

// ---- slice

struct SliceArgs {
  int n = 2;
  int slices = 2;
};

void run_slice(Run& run, const SliceArgs& a) {
  const auto frame = build_frame(a.n);
  const auto pieces = enumerate_pieces(frame, a.slices);
  const auto classes = classify_shapes(pieces);
  std::vector<std::string> rows;
  bool levels_agree = true;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& rep = pieces[static_cast<std::size_t>(classes.representative[classes.class_of[i]])];
    levels_agree = levels_agree && shape_class(rep) == shape_class(pieces[i]);
    rows.push_back(fmt::format("{},{},{},{}", join_ints(pieces[i].k), shape_class(pieces[i]), num(pieces[i].volume),
                               join_ints(rep.k)));
  }
  const std::size_t count = classes.representative.size();
  const std::string verdict = fmt::format("classes <= {}: {}", a.n, pass(static_cast<int>(count) <= a.n));
  const std::vector<std::string> summary = {
      fmt::format("pieces={} classes={} simplex_volume={}", pieces.size(), count, num(simplex_volume(frame))),
      fmt::format("classes match sum(k) levels: {}", pass(levels_agree && classes.well_separated)), verdict};
  const auto path = run.write_csv("slice.csv", "k,shape_class,volume,class_representative", rows, summary);
  *run.out << fmt::format("{} pieces, {} classes\n{}\nwrote {}\n", pieces.size(), count, verdict, path.string());
}

// ---- smooth

struct SmoothArgs {
  std::string polytope;
  double eps = 0.1;
  int dirs = 256;
  int trials = 1000;
};

void run_smooth(Run& run, const SmoothArgs& a) {
  const Polytope polytope = run.load(a.polytope);
  const SmoothedBody body = smoothed_body(polytope, a.eps, a.dirs);
  const ConvexityReport probe = convexity_probe(body, a.trials, run.common.seed);
  const int dim = polytope.ambient_dim();
  std::string columns;
  for (int i = 0; i < dim; ++i) columns += fmt::format("u{},", i);
  columns += "rho_0,rho_eps";
  std::vector<std::string> rows;
  bool inside = true;
  for (std::size_t i = 0; i < body.directions.size(); ++i) {
    std::string row;
    for (int k = 0; k < dim; ++k) row += num(body.directions[i](k)) + ",";
    rows.push_back(row + num(body.rho_polytope[i]) + "," + num(body.rho_smoothed[i]));
    inside = inside && body.rho_smoothed[i] <= body.rho_polytope[i];
  }
  const std::vector<std::string> summary = {
      fmt::format("eps={} volume={} polytope_volume={} volume_loss={}", num(a.eps), num(body.volume),
                  num(body.polytope_volume), num(body.polytope_volume - body.volume)),
      fmt::format("max_convexity_violation={} trials={}", num(probe.max_violation), probe.trials),
      fmt::format("smoothed body inside polytope: {}", pass(inside))};
  const auto path = run.write_csv("smooth.csv", columns, rows, summary);
  *run.out << fmt::format("volume {} (polytope {}), max convexity violation {}\nwrote {}\n", num(body.volume),
                          num(body.polytope_volume), num(probe.max_violation), path.string());
}

// ---- profile

struct ProfileArgs {
  std::string model = "euclidean";
  int n = 2;
  std::optional<double> omega;
  double vmin = 1e-3;
  double vmax = 1.0;
  int points = 256;
};

void run_profile(Run& run, const ProfileArgs& a) {
  const auto grid = log_grid(a.vmin, a.vmax, a.points);
  Profile profile;
  if (a.model == "euclidean") {
    profile = make_euclidean_profile(a.n, grid);
  } else if (a.model == "sphere") {
    profile = make_sphere_profile(a.n, grid);
  } else {
    if (!a.omega) throw Error(ErrorKind::BadArgument, "the cone model needs --omega");
    profile = make_cone_profile(*a.omega, a.n, grid);
  }
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back(num(grid[i]) + "," + num(profile.perimeters[i]));
  const auto path = run.write_csv("profile.csv", "V,A", rows, {fmt::format("model={} n={}", a.model, a.n)});
  *run.out << fmt::format("{} samples of the {} profile\nwrote {}\n", grid.size(), a.model, path.string());
  if (run.common.svg) {
    const auto svg = run.write("profile.svg", loglog_svg(fmt::format("{} profile, n = {}", a.model, a.n), "V", "A",
                                                         {{a.model, grid, profile.perimeters}}));
    *run.out << "wrote " << svg.string() << "\n";
  }
}

// ---- solve

struct SolveArgs {
  std::string polytope;
  double volume = 0.05;
  int level = 4;
  int iters = 200000;
  int restarts = 8;
};

void run_solve(Run& run, const SolveArgs& a) {
  const Polytope polytope = run.load(a.polytope);
  const SurfaceMesh mesh = subdivide(polytope, a.level);
  SolverConfig config;
  config.seed = run.common.seed;
  config.iterations = a.iters;
  config.restarts = a.restarts;
  config.cooling_rate = SolverConfig::cooling_for(a.iters);
  const SolveResult result = minimize_perimeter(mesh, a.volume, config);
  const double bound = continuum_bound(polytope, a.volume);
  const double kappa = anisotropy_bound(mesh);
  const double perimeter = result.best.cut_perimeter();

  std::vector<std::string> rows;
  for (int t : result.best.triangle_indices())
    rows.push_back(fmt::format("{},{},{}", t, mesh.facet_of()[static_cast<std::size_t>(t)],
                               num(mesh.triangle_areas()[static_cast<std::size_t>(t)])));
  const auto region = run.write_csv("solve_region.csv", "triangle,facet,area", rows);

  const bool lower = perimeter >= bound - 1e-9;
  const bool upper = perimeter <= kappa * bound;
  const std::string check = fmt::format("bound check: {} <= {} <= {}: {}", num(bound), num(perimeter),
                                        num(kappa * bound), pass(lower && upper));
  const Eigen::Vector3d c = result.best.centroid();
  const std::vector<std::string> summary_rows = {
      "volume," + num(a.volume),
      "area," + num(result.best.area()),
      "perimeter," + num(perimeter),
      "continuum_bound," + num(bound),
      "kappa," + num(kappa),
      "triangles," + std::to_string(result.best.size()),
      "restart," + std::to_string(result.restart),
      fmt::format("centroid,{} {} {}", num(c.x()), num(c.y()), num(c.z())),
  };
  const auto summary = run.write_csv("solve.csv", "key,value", summary_rows, {check});
  *run.out << fmt::format("area {} perimeter {} (restart {})\n{}\nwrote {}\nwrote {}\n", num(result.best.area()),
                          num(perimeter), result.restart, check, region.string(), summary.string());
}

// ---- gallery

struct GalleryArgs {
  double theta = 0.2;
  double volume = 0.01;
  std::optional<double> base_link;
  double half_angle = 5.0;
  double side = 1.0;
  double height = 1.0;
  double spike_radius = 0.25;
};

void run_double_pyramid(Run& run, const GalleryArgs& a) {
  const auto r = double_pyramid_report(a.theta, a.volume, a.base_link);
  std::vector<std::string> rows = {
      "one_sided_ball," + num(r.theta) + "," + num(r.one_sided),
      "glued_apex_ball," + num(2 * r.theta) + "," + num(r.glued),
  };
  if (r.base_ball) rows.push_back("base_vertex_ball," + num(*r.base_link) + "," + num(*r.base_ball));
  std::vector<std::string> summary = {
      fmt::format("ratio={}", num(r.ratio)),
      fmt::format("verdict: glued apex ball is {}minimizing", r.glued_ball_minimizing ? "" : "NOT ")};
  if (r.one_sided_beats_base)
    summary.push_back(fmt::format("one-sided ball beats base vertex ball: {}", *r.one_sided_beats_base ? "yes" : "no"));
  const auto path = run.write_csv("double_pyramid.csv", "candidate,link,perimeter", rows, summary);
  *run.out << fmt::format("ratio {}; {}\nwrote {}\n", num(r.ratio), summary[1], path.string());
}

void run_spiked_cone(Run& run, const GalleryArgs& a) {
  SpikedConeSpec spec;
  spec.side = a.side;
  spec.height = a.height;
  spec.spike_circumradius = a.spike_radius;
  spec.apex_half_angle_deg = a.half_angle;
  const auto r = spiked_cone_report(spec, a.volume);
  const std::vector<std::string> rows = {
      "q_over_spike_tip," + num(r.link_q) + "," + num(r.perimeter_q),
      "cone_apex," + num(r.link_apex) + "," + num(r.perimeter_apex),
      "hypercube_vertex," + num(r.link_hypercube) + "," + num(r.perimeter_hypercube),
  };
  const std::string verdict = fmt::format("verdict: 2 theta_p {} |K| so {} wins", r.q_beats_apex ? "<" : ">=",
                                          r.q_beats_apex ? "q" : "the apex");
  const std::vector<std::string> summary = {
      fmt::format("theta_p={} spike_height={} volume={}", num(r.theta_p), num(r.spike_height), num(r.volume)),
      verdict};
  const auto path = run.write_csv("spiked_cone.csv", "point,link,perimeter", rows, summary);
  *run.out << fmt::format("{}\nwrote {}\n", verdict, path.string());
}

void run_cube_competitors(Run& run, const GalleryArgs& a) {
  const auto report = cube_competitors(a.volume);
  std::vector<std::string> rows;
  for (const auto& e : report.entries)
    rows.push_back(fmt::format("{},{},{}", e.family, num(e.perimeter), e.valid ? 1 : 0));
  std::vector<std::string> summary = {fmt::format("volume={} winner={} perimeter={}", num(report.volume),
                                                  report.winner, num(report.winning_perimeter))};
  for (const auto& c : cube_crossovers())
    summary.push_back(fmt::format("crossover V={} {} -> {}", num(c.volume), c.before, c.after));
  const auto path = run.write_csv("cube_competitors.csv", "family,perimeter,valid", rows, summary);
  *run.out << fmt::format("winner {} with perimeter {}\nwrote {}\n", report.winner, num(report.winning_perimeter),
                          path.string());
  if (run.common.svg) {
    const auto grid = log_grid(0.01, 5.99, 200);
    std::vector<Series> series;
    for (const auto& e : cube_competitors(grid.front()).entries) series.push_back({e.family, {}, {}});
    for (double v : grid) {
      const auto r = cube_competitors(v);
      for (std::size_t i = 0; i < r.entries.size(); ++i) {
        if (!r.entries[i].valid) continue;
        series[i].x.push_back(v);
        series[i].y.push_back(r.entries[i].perimeter);
      }
    }
    const auto svg = run.write("cube_competitors.svg",
                               loglog_svg("cube surface competitors", "V", "perimeter", series));
    *run.out << "wrote " << svg.string() << "\n";
  }
}

std::string join_flags(const std::vector<std::string>& args) {
  std::string s;
  for (std::size_t i = 1; i < args.size(); ++i) s += (i > 1 ? " " : "") + args[i];
  return s;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr);
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto usage = [&] {
    err << "usage: polyiso {analyze|slice|smooth|profile|solve|gallery} [flags]\n";
  };
  if (args.empty()) {
    usage();
    return kExitUnknownCommand;
  }
  const std::string& command = args[0];
  if (command == "--help" || command == "-h") {
    out << "usage: polyiso {analyze|slice|smooth|profile|solve|gallery} [flags]\n";
    return kExitOk;
  }
  if (command == "--version") {
    out << "polyiso " << kVersion << "\n";
    return kExitOk;
  }
  if (!kCommands.count(command)) {
    err << "error: unknown command '" << command << "'\n";
    usage();
    return kExitUnknownCommand;
  }
  if (command == "gallery" && args.size() > 1 && args[1][0] != '-' && !kGalleries.count(args[1])) {
    err << "error: unknown gallery '" << args[1] << "'\n";
    return kExitUnknownCommand;
  }

  Run run;
  run.command = command;
  run.flags = join_flags(args);
  run.out = &out;

  CLI::App app{"Isoperimetric experiments on convex polytopes", "polyiso"};
  app.require_subcommand(1);
  std::function<void()> action;

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Vertex links and apex-ball profiles");
  c_analyze->add_option("--polytope", analyze.polytope)->required();
  add_common(c_analyze, run.common);
  c_analyze->callback([&] { action = [&] { run_analyze(run, analyze); }; });

  SliceArgs slice;
  auto* c_slice = app.add_subcommand("slice", "Slice the regular simplex and classify the pieces");
  c_slice->add_option("--n", slice.n)->required();
  c_slice->add_option("--N", slice.slices)->required();
  add_common(c_slice, run.common);
  c_slice->callback([&] { action = [&] { run_slice(run, slice); }; });

  SmoothArgs smooth;
  auto* c_smooth = app.add_subcommand("smooth", "Mollified gauge body");
  c_smooth->add_option("--polytope", smooth.polytope)->required();
  c_smooth->add_option("--eps", smooth.eps)->capture_default_str();
  c_smooth->add_option("--dirs", smooth.dirs)->capture_default_str();
  c_smooth->add_option("--trials", smooth.trials)->capture_default_str();
  add_common(c_smooth, run.common);
  c_smooth->callback([&] { action = [&] { run_smooth(run, smooth); }; });

  ProfileArgs profile;
  auto* c_profile = app.add_subcommand("profile", "Closed-form isoperimetric profiles");
  c_profile->add_option("--model", profile.model)
      ->check(CLI::IsMember({"euclidean", "sphere", "cone"}))
      ->capture_default_str();
  c_profile->add_option("--n", profile.n)->capture_default_str();
  c_profile->add_option("--omega", profile.omega);
  c_profile->add_option("--vmin", profile.vmin)->capture_default_str();
  c_profile->add_option("--vmax", profile.vmax)->capture_default_str();
  c_profile->add_option("--points", profile.points)->capture_default_str();
  add_common(c_profile, run.common);
  c_profile->callback([&] { action = [&] { run_profile(run, profile); }; });

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve", "Discrete perimeter minimization on a subdivided surface");
  c_solve->add_option("--polytope", solve.polytope)->required();
  c_solve->add_option("--volume", solve.volume)->required();
  c_solve->add_option("--level", solve.level)->capture_default_str();
  c_solve->add_option("--iters", solve.iters)->capture_default_str();
  c_solve->add_option("--restarts", solve.restarts)->capture_default_str();
  add_common(c_solve, run.common);
  c_solve->callback([&] { action = [&] { run_solve(run, solve); }; });

  GalleryArgs gallery;
  auto* c_gallery = app.add_subcommand("gallery", "Constructions where vertex balls lose");
  c_gallery->require_subcommand(1);
  auto* g_pyramid = c_gallery->add_subcommand("double-pyramid", "Two pyramids glued at their apices");
  g_pyramid->add_option("--theta", gallery.theta)->capture_default_str();
  g_pyramid->add_option("--volume", gallery.volume)->capture_default_str();
  g_pyramid->add_option("--base-link", gallery.base_link);
  add_common(g_pyramid, run.common);
  g_pyramid->callback([&] { action = [&] { run_double_pyramid(run, gallery); }; });

  auto* g_spike = c_gallery->add_subcommand("spiked-cone", "Cone over a cube surface with a tetrahedral spike");
  g_spike->add_option("--half-angle", gallery.half_angle)->capture_default_str();
  g_spike->add_option("--volume", gallery.volume)->capture_default_str();
  g_spike->add_option("--side", gallery.side)->capture_default_str();
  g_spike->add_option("--height", gallery.height)->capture_default_str();
  g_spike->add_option("--spike-radius", gallery.spike_radius)->capture_default_str();
  add_common(g_spike, run.common);
  g_spike->callback([&] { action = [&] { run_spiked_cone(run, gallery); }; });

  auto* g_cube = c_gallery->add_subcommand("cube-competitors", "Competitor families on the unit cube surface");
  g_cube->add_option("--volume", gallery.volume)->capture_default_str();
  add_common(g_cube, run.common);
  g_cube->callback([&] {
    if (g_cube->count("--volume") == 0) gallery.volume = 0.1;
    action = [&] { run_cube_competitors(run, gallery); };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  if (!action) {
    usage();
    return kExitUnknownCommand;
  }
  try {
    action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_numerical(e.kind()) ? kExitNumerical : kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, out, err);
}

}  // namespace polyiso::cli
