#include "anosov/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "anosov/certify.hpp"
#include "anosov/domains.hpp"
#include "anosov/io.hpp"
#include "anosov/sections.hpp"

namespace anosov::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::pair<Command, std::string>> kCommands{
    {Command::Ball, "ball"},
    {Command::Certify, "certify"},
    {Command::Domain, "domain"},
    {Command::SideGrowth, "side-growth"},
    {Command::InfiniteSidedRepro, "infinite-sided-repro"},
    {Command::RestrictedDomain, "restricted-domain"},
    {Command::Section, "section"},
};

json tolerances() {
  return {{"symmetrize", symspace::tol::kSymmetrize},   {"symmetric_input", symspace::tol::kSymmetricInput},
          {"positive", symspace::tol::kPositive},       {"metric", symspace::tol::kMetric},
          {"inertia", symspace::tol::kInertia},         {"redundant", 1e-9},
          {"witness", 1e-8},                            {"pencil", 1e-9}};
}

std::string num(double x) { return io::format_double(x); }

json word_json(const std::vector<int>& word) {
  json out = json::array();
  for (int s : word) out.push_back(s);
  return out;
}

// Collects artifacts in one directory with a common provenance block.
class Artifacts {
public:
  Artifacts(const RunPlan& plan, const groups::GroupSpec& spec) : dir_(plan.out) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw Error(ErrorCode::IoError, "cannot create output directory " + dir_.string());
    meta_ = {{"group", io::group_hash(spec)}, {"group_name", spec.name}, {"plan", plan.to_json()},
             {"seed", plan.seed},             {"tolerances", tolerances()}, {"version", io::kLibraryVersion}};
    csv_meta_ = "group=" + io::group_hash(spec) + " command=" + to_string(plan.command) +
                " radius=" + std::to_string(plan.radius) + " seed=" + std::to_string(plan.seed) +
                " version=" + io::kLibraryVersion + " metric_tol=1e-9 witness_tol=1e-8";
  }

  void write_json(const std::string& name, json body) {
    body["meta"] = meta_;
    add(name, io::write_text(dir_ / name, io::dump_json(body)));
  }

  void write_csv(const std::string& name, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    add(name, io::write_text(dir_ / name, io::csv_text(csv_meta_, header, rows)));
  }

  void add(const std::string& name, const std::string& hash) { files_.push_back({name, hash}); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  Manifest finish(json summary) {
    Manifest m{files_, std::move(summary)};
    json list = json::array();
    for (const auto& f : files_) list.push_back({{"file", f.file}, {"fnv1a", f.hash}});
    json doc{{"files", list}, {"summary", m.summary}, {"meta", meta_}};
    io::write_text(dir_ / "manifest.json", io::dump_json(doc));
    return m;
  }

private:
  fs::path dir_;
  json meta_;
  std::string csv_meta_;
  std::vector<ArtifactEntry> files_;
};

symspace::OmegaForm resolve_omega(const RunPlan& plan, int d) {
  if (plan.omega == "omega1") return symspace::OmegaForm::omega1(d);
  if (plan.omega == "omegaDelta") return symspace::OmegaForm::omega_delta(d);
  if (static_cast<int>(plan.omega_coefficients.size()) != d)
    throw Error(ErrorCode::DimensionMismatch, "omega has " + std::to_string(plan.omega_coefficients.size()) +
                                                  " coefficients for a group in dimension " + std::to_string(d));
  Vector c(d);
  for (int i = 0; i < d; ++i) c[i] = plan.omega_coefficients[static_cast<std::size_t>(i)];
  return symspace::OmegaForm(c);
}

json history_json(const std::vector<domains::SideHistoryRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back({{"radius", r.radius}, {"essential", r.essential}, {"undecided", r.undecided}});
  return out;
}

std::vector<std::vector<std::string>> history_rows(const std::vector<domains::SideHistoryRow>& rows) {
  std::vector<std::vector<std::string>> out;
  for (const auto& r : rows) out.push_back({std::to_string(r.radius), std::to_string(r.essential), std::to_string(r.undecided)});
  return out;
}

bool strictly_increasing_from(const std::vector<domains::SideHistoryRow>& rows, int from) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].radius > from && rows[i].essential <= rows[i - 1].essential) return false;
  return true;
}

json shells_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(std::isfinite(x) ? json(x) : json(nullptr));
  return out;
}

domains::Region resolve_region(const RunPlan& plan) {
  return plan.region == "spd-interior" ? domains::Region::SpdInterior : domains::Region::Satake;
}

// ---------------------------------------------------------------------------

json run_ball(const RunPlan& plan, const groups::GroupSpec& spec, Artifacts& art) {
  const auto ball = groups::word_ball(spec, plan.radius);
  const std::string cache = "ball_" + io::group_hash(spec) + "_R" + std::to_string(plan.radius) + ".bin";
  io::write_ball_cache(ball, art.path(cache));
  {
    std::ifstream in(art.path(cache), std::ios::binary);
    std::ostringstream bytes;
    bytes << in.rdbuf();
    art.add(cache, io::fnv1a_hex(bytes.str()));
  }
  json body{{"type", "ball"}, {"cache", cache}, {"radius", ball.radius}, {"count", ball.elements.size()},
            {"shell_sizes", ball.shell_sizes}, {"exact", spec.rational()}};
  art.write_json("ball_manifest.json", body);
  return {{"count", ball.elements.size()}, {"shell_sizes", ball.shell_sizes}};
}

json run_certify(const RunPlan& plan, const groups::GroupSpec& spec, const symspace::SpdPoint& o, Artifacts& art) {
  const auto ball = groups::word_ball(spec, plan.radius);
  const int d = spec.dim;
  json summary;

  if (plan.radius >= 3) {
    json gaps = json::array();
    for (int k = 1; k < d; ++k) {
      const auto est = certify::estimate_anosov(ball, o, k);
      gaps.push_back({{"k", k}, {"per_shell_min", est.per_shell_min}, {"a_hat", est.a_hat}, {"b_hat", est.b_hat}});
    }
    art.write_json("anosov.json", {{"type", "anosov"}, {"radius", plan.radius}, {"data", gaps}});
  }

  const auto w = resolve_omega(plan, d);
  const auto minus = symspace::OmegaForm(-w.coefficients());
  json und = json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto* form : {&w, &minus}) {
    const auto est = certify::estimate_undistorted(ball, o, *form);
    und.push_back({{"omega", est.omega},         {"per_shell_min", est.per_shell_min}, {"a_hat", est.a_hat},
                   {"b_hat", est.b_hat},         {"wall_margin", est.wall_margin},     {"c_constant", est.c_constant}});
    if (form == &w) {
      summary["a_hat"] = est.a_hat;
      summary["wall_margin"] = est.wall_margin;
      for (std::size_t L = 0; L < est.per_shell_min.size(); ++L) rows.push_back({std::to_string(L), num(est.per_shell_min[L])});
    }
  }
  art.write_json("undistorted.json", {{"type", "undistorted"},
                                      {"radius", plan.radius},
                                      {"verdict", summary["a_hat"].get<double>() > 0 ? "positive-slope" : "degenerate"},
                                      {"data", und},
                                      {"note", "both omega and -omega are checked at the same basepoint"}});
  art.write_csv("undistorted_shells.csv", {"shell", "min_statistic"}, rows);

  double top = 0.0;
  for (const auto& g : ball.elements) top = std::max(top, certify::cartan_projection(g, o).norm());
  if (top > 0) {
    const auto cone = certify::sample_limit_cone(ball, o, 0.5 * top);
    art.write_json("limit_cone.json", {{"type", "limit-cone"},
                                       {"radius", plan.radius},
                                       {"verdict", cone.epsilon_graph_connected ? "connected" : "disconnected"},
                                       {"data",
                                        {{"samples", cone.vectors.size()},
                                         {"cutoff", cone.cutoff},
                                         {"epsilon", cone.epsilon},
                                         {"components", cone.components},
                                         {"spread", cone.spread}}}});
  }

  const auto mode = plan.mode == "flag" ? certify::Mode::Flag : certify::Mode::Satake;
  std::vector<int> depths;
  if (plan.depth) {
    depths.push_back(*plan.depth);
  } else {
    for (int depth = 1; 2 * depth <= plan.radius; ++depth) depths.push_back(depth);
  }
  json per_depth = json::array();
  std::string verdict = "inconclusive";
  for (int depth : depths) {
    const auto cert = certify::certify_disjoint_half_spaces(ball, o, depth, mode, plan.seed);
    json triples = json::array();
    for (const auto& t : cert.triples)
      triples.push_back({{"x", word_json(ball.elements[t.x].word)},
                         {"z", word_json(ball.elements[t.z].word)},
                         {"t_star", t.t_star},
                         {"lambda_max", t.lambda_max},
                         {"verdict", certify::to_string(t.verdict)}});
    json entry{{"depth", depth}, {"verdict", certify::to_string(cert.verdict)}, {"worst_lambda", cert.worst_lambda}, {"triples", triples}};
    if (cert.witness) entry["witness"] = io::matrix_to_json(*cert.witness);
    per_depth.push_back(entry);
    verdict = certify::to_string(cert.verdict);
    if (cert.verdict == certify::Verdict::Certified) break;
  }
  art.write_json("disjointness.json", {{"type", "disjointness"},
                                       {"radius", plan.radius},
                                       {"mode", certify::to_string(mode)},
                                       {"verdict", verdict},
                                       {"data", per_depth}});
  summary["disjointness"] = verdict;
  return summary;
}

json run_domain(const RunPlan& plan, const groups::GroupSpec& spec, const symspace::SpdPoint& o, Artifacts& art) {
  const auto ball = groups::word_ball(spec, plan.radius);
  auto dom = domains::build_domain(ball, o);
  domains::classify_sides(dom, resolve_region(plan));

  json sides = json::array();
  for (std::size_t i = 0; i < dom.half_spaces.size(); ++i) {
    const auto& h = dom.half_spaces[i];
    sides.push_back({{"functional", io::matrix_to_json(h.functional)},
                     {"source_word", word_json(*h.source_word)},
                     {"length", dom.length[i]},
                     {"flag", domains::to_string(dom.flags[i])},
                     {"boundary_only", static_cast<bool>(dom.boundary_only[i])},
                     {"witness", dom.witnesses[i] ? io::matrix_to_json(*dom.witnesses[i]) : json(nullptr)}});
  }
  art.write_json("domain.json", {{"type", "domain"},
                                 {"radius", plan.radius},
                                 {"region", domains::to_string(resolve_region(plan))},
                                 {"basepoint", io::matrix_to_json(o.matrix())},
                                 {"essential", dom.count(domains::SideFlag::Essential)},
                                 {"undecided", dom.count(domains::SideFlag::Undecided)},
                                 {"lp_stalls", dom.lp_stalls},
                                 {"side_history", history_json(dom.side_history)},
                                 {"data", sides}});
  art.write_csv("side_history.csv", {"radius", "essential_count", "undecided_count"}, history_rows(dom.side_history));

  json margin;
  try {
    const auto rep = domains::margin_report(dom, ball, plan.seed);
    margin = {{"type", "margin"},
              {"radius", plan.radius},
              {"verdict", rep.properly_finite_sided_empirical ? "finite-sided-evidence" : "no-evidence"},
              {"data",
               {{"shells", shells_json(rep.shells)},
                {"log_d", rep.log_d_threshold},
                {"l0", rep.l0},
                {"fitted_slope", rep.fitted_slope},
                {"witnesses", rep.witness_count}}},
              {"note", "empirical trend on a truncation, not a proof of proper finite-sidedness"}};
  } catch (const Error& e) {
    margin = {{"type", "margin"}, {"radius", plan.radius}, {"verdict", "unavailable"}, {"error", e.what()}};
  }
  art.write_json("margin.json", margin);

  const auto tiling = domains::tiling_check(dom, ball, 1000, 2.0, plan.seed);
  art.write_json("tiling.json", {{"type", "tiling"},
                                 {"radius", plan.radius},
                                 {"verdict", tiling.violations == 0 ? "consistent" : "violations"},
                                 {"data",
                                  {{"samples", tiling.samples},
                                   {"selberg_radius", tiling.radius},
                                   {"violations", tiling.violations},
                                   {"worst_value", tiling.worst_value}}}});
  return {{"half_spaces", dom.half_spaces.size()},
          {"essential", dom.count(domains::SideFlag::Essential)},
          {"undecided", dom.count(domains::SideFlag::Undecided)},
          {"lp_stalls", dom.lp_stalls}};
}

json run_side_growth(const RunPlan& plan, const groups::GroupSpec& spec, const symspace::SpdPoint& o, Artifacts& art,
                     const std::string& csv_name, bool* strict_from_3 = nullptr) {
  const auto rows = domains::side_growth(spec, o, plan.radius, resolve_region(plan));
  art.write_csv(csv_name, {"radius", "essential_count", "undecided_count"}, history_rows(rows));
  if (strict_from_3) *strict_from_3 = strictly_increasing_from(rows, 3);
  return history_json(rows);
}

json run_repro(const RunPlan& plan, const groups::GroupSpec& spec, const symspace::SpdPoint& o, Artifacts& art) {
  bool strict = false;
  const json at_base = run_side_growth(plan, spec, o, art, "side_growth.csv", &strict);
  const json off = run_side_growth(plan, spec, load_basepoint("offaxis", spec.dim), art, "side_growth_offplane.csv");
  art.write_json("repro.json", {{"type", "infinite-sided-repro"},
                                {"radius", plan.radius},
                                {"verdict", strict ? "strictly-increasing" : "not-strictly-increasing"},
                                {"data", {{"basepoint", at_base}, {"offplane", off}}},
                                {"note", "off-plane growth is reported only"}});
  return {{"strictly_increasing_from_3", strict}};
}

json run_restricted(const RunPlan& plan, const groups::GroupSpec& spec, const symspace::SpdPoint& o, Artifacts& art) {
  const auto ball = groups::word_ball(spec, plan.radius);
  if (plan.radius >= 3 && certify::estimate_anosov(ball, o, 1).a_hat <= 0)
    throw Error(ErrorCode::NoGap, "group fails the projective Anosov estimate");
  const auto sample = certify::sample_limit_directions(ball, std::min(plan.radius, 5), static_cast<std::size_t>(plan.samples));
  const auto rd = domains::build_restricted_domain(sample, ball, o);
  json sides = json::array();
  for (std::size_t i = 0; i < rd.half_spaces.size(); ++i) {
    if (rd.flags[i] == domains::SideFlag::Redundant) continue;
    sides.push_back({{"functional", io::matrix_to_json(rd.half_spaces[i].functional)},
                     {"source_word", word_json(*rd.half_spaces[i].source_word)},
                     {"flag", domains::to_string(rd.flags[i])},
                     {"weights", rd.witnesses[i] ? io::vector_to_json(*rd.witnesses[i]) : json(nullptr)}});
  }
  art.write_json("restricted_domain.json", {{"type", "restricted-domain"},
                                            {"radius", plan.radius},
                                            {"samples", sample.directions.size()},
                                            {"transversality", rd.transversality},
                                            {"essential", rd.essential()},
                                            {"data", sides}});
  return {{"essential", rd.essential()}, {"transversality", rd.transversality}};
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "unknown";
}

json RunPlan::to_json() const {
  json j{{"command", cli::to_string(command)}, {"group", group},   {"base", base},     {"radius", radius},
         {"omega", omega},                     {"mode", mode},     {"region", region}, {"samples", samples},
         {"seed", seed}};
  if (!omega_coefficients.empty()) j["omega_coefficients"] = omega_coefficients;
  if (depth) j["depth"] = *depth;
  return j;
}

std::string help_text() {
  return R"(usage: anosov-domains <command> [options]

commands:
  ball                  enumerate the word ball and write its cache
  certify               Anosov gaps, omega-undistortion, limit cone, disjoint half-spaces
  domain                Dirichlet-Selberg truncation, margin report, tiling check
  side-growth           essential side counts for r = 1..R
  infinite-sided-repro  side growth for the integral SO(2,1) lattice (default R = 8)
  restricted-domain     domain restricted to the hull of sampled limit directions
  section               bisector sections as CSV polylines (d = 3)

options:
  --group PATH|fx:NAME[:PARAMS...]   group JSON file or built-in fixture
  --base identity|axis|offaxis|PATH  basepoint (axis is x_l for l = e_d, i.e. I)
  --radius N                         ball radius, N >= 1 (default 6)
  --omega omega1|omegaDelta|c1,...,cd
  --mode flag|satake                 disjointness mode and section chart (default satake)
  --depth D                          fixed disjointness depth (default: 1..R/2)
  --region satake|spd-interior       side flavour for domain commands
  --samples N                        limit directions for restricted-domain (default 200)
  --out DIR                          output directory (default .)
  --seed N                           sampling seed (default 0)

exit codes:
  0 ok
  2 usage error
  3 input error (parse, unknown fixture, invalid matrix, I/O)
  4 numerical stall (LP stall, transversality failure, no singular value gap)
  5 ball cap exceeded (ANOSOV_CAP overrides the cap)
)";
}

RunPlan parse_args(const std::vector<std::string>& args) {
  RunPlan plan;
  CLI::App app{"anosov-domains"};
  std::string command, omega = "omega1", out = ".";
  std::optional<int> depth;
  app.add_option("command", command)->required();
  app.add_option("--group", plan.group);
  app.add_option("--base", plan.base);
  auto* radius = app.add_option("--radius", plan.radius);
  app.add_option("--omega", omega);
  app.add_option("--mode", plan.mode);
  app.add_option("--depth", depth);
  app.add_option("--region", plan.region);
  app.add_option("--samples", plan.samples);
  app.add_option("--out", out);
  app.add_option("--seed", plan.seed);
  app.set_help_flag();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::UsageError, e.what());
  }

  bool known = false;
  for (const auto& [cmd, name] : kCommands)
    if (name == command) {
      plan.command = cmd;
      known = true;
    }
  if (!known) throw Error(ErrorCode::UsageError, "unknown command '" + command + "'");
  plan.radius_given = radius->count() > 0;
  if (plan.radius < 1) throw Error(ErrorCode::UsageError, "--radius " + std::to_string(plan.radius) + " must be >= 1");
  if (plan.mode != "flag" && plan.mode != "satake") throw Error(ErrorCode::UsageError, "--mode " + plan.mode);
  if (plan.region != "satake" && plan.region != "spd-interior") throw Error(ErrorCode::UsageError, "--region " + plan.region);
  if (plan.samples < 1) throw Error(ErrorCode::UsageError, "--samples " + std::to_string(plan.samples));
  if (depth && *depth < 1) throw Error(ErrorCode::UsageError, "--depth " + std::to_string(*depth));
  plan.depth = depth;
  plan.out = out;

  plan.omega = omega;
  if (omega != "omega1" && omega != "omegaDelta") {
    plan.omega = "custom";
    std::stringstream ss(omega);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size()) throw Error(ErrorCode::UsageError, "--omega " + omega);
      plan.omega_coefficients.push_back(v);
    }
    if (plan.omega_coefficients.size() < 2) throw Error(ErrorCode::UsageError, "--omega " + omega);
  }

  if (plan.command == Command::InfiniteSidedRepro) {
    if (plan.group.empty()) plan.group = "fx:so21-integral-lattice";
    if (!plan.radius_given) plan.radius = 8;
  }
  if (plan.group.empty()) throw Error(ErrorCode::UsageError, "--group is required");
  return plan;
}

groups::GroupSpec load_group(const std::string& source) {
  if (source.rfind("fx:", 0) == 0) return groups::fixture_from_string(source);
  return groups::parse_group(io::read_json_file(source));
}

symspace::SpdPoint load_basepoint(const std::string& base, int d) {
  if (base == "identity" || base == "axis") return symspace::make_point(Matrix::Identity(d, d));
  if (base == "offaxis") {
    Matrix o(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) o(i, j) = i == j ? 1.0 + 0.3 * i : 0.2 / (1 + i + j);
    return symspace::make_point(o);
  }
  const Matrix m = io::matrix_from_json(io::read_json_file(base));
  if (m.rows() != d) throw Error(ErrorCode::DimensionMismatch, "basepoint dimension does not match the group");
  return symspace::make_point(m);
}

namespace {

json run_section(const RunPlan& plan, const groups::GroupSpec& spec, const symspace::SpdPoint& o, Artifacts& art) {
  if (spec.dim != 3) throw Error(ErrorCode::DimensionUnsupported, "sections are emitted for d = 3 only");
  const auto ball = groups::word_ball(spec, plan.radius);
  const auto dom = domains::build_domain(ball, o);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < dom.half_spaces.size(); ++i) {
    const auto& a = dom.half_spaces[i].functional;
    const auto lines = plan.mode == "flag" ? sections::flag_section(a, static_cast<int>(i))
                                           : sections::diagonal_section(a, static_cast<int>(i));
    for (const auto& pl : lines)
      for (std::size_t k = 0; k < pl.points.size(); ++k)
        rows.push_back({std::to_string(pl.bisector), std::to_string(pl.component), std::to_string(k), num(pl.points[k][0]),
                        num(pl.points[k][1])});
  }
  art.write_csv("sections.csv", {"bisector", "component", "point", "x", "y"}, rows);
  if (spec.name == "so21-integral-lattice") {
    std::vector<std::vector<std::string>> sweep;
    for (const auto& [t, h] : sections::boost_sweep(10)) sweep.push_back({num(t), num(h)});
    art.write_csv("sweep.csv", {"t", "hausdorff"}, sweep);
  }
  return {{"bisectors", dom.half_spaces.size()}, {"chart", plan.mode == "flag" ? "flag-z1" : "diagonal-simplex"}};
}

}  // namespace

std::vector<ArtifactEntry> emit_section(const RunPlan& plan) {
  const auto spec = load_group(plan.group);
  if (spec.dim != 3) throw Error(ErrorCode::DimensionUnsupported, "sections are emitted for d = 3 only");
  const auto o = load_basepoint(plan.base, 3);
  Artifacts art(plan, spec);
  const json summary = run_section(plan, spec, o, art);
  return art.finish(summary).files;
}

Manifest execute(const RunPlan& plan) {
  const auto spec = load_group(plan.group);
  if (plan.command == Command::Section && spec.dim != 3)
    throw Error(ErrorCode::DimensionUnsupported, "sections are emitted for d = 3 only");
  const auto o = load_basepoint(plan.base, spec.dim);
  Artifacts art(plan, spec);
  json summary;
  switch (plan.command) {
    case Command::Ball: summary = run_ball(plan, spec, art); break;
    case Command::Certify: summary = run_certify(plan, spec, o, art); break;
    case Command::Domain: summary = run_domain(plan, spec, o, art); break;
    case Command::SideGrowth: summary = {{"side_history", run_side_growth(plan, spec, o, art, "side_history.csv")}}; break;
    case Command::InfiniteSidedRepro: summary = run_repro(plan, spec, o, art); break;
    case Command::RestrictedDomain: summary = run_restricted(plan, spec, o, art); break;
    case Command::Section: summary = run_section(plan, spec, o, art); break;
  }
  return art.finish(summary);
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::UsageError: return 2;
    case ErrorCode::LpStall:
    case ErrorCode::TransversalityFailure:
    case ErrorCode::NoGap:
    case ErrorCode::NoWitnesses:
    case ErrorCode::DegeneratePairing:
    case ErrorCode::DegenerateForm:
      return 4;
    case ErrorCode::BallTooLarge: return 5;
    default: return 3;
  }
}

int run(const std::vector<std::string>& args) {
  if (args.empty()) {
    std::cerr << help_text();
    return 2;
  }
  if (std::find(args.begin(), args.end(), "--help") != args.end() || std::find(args.begin(), args.end(), "-h") != args.end()) {
    std::cout << help_text();
    return 0;
  }
  try {
    const RunPlan plan = parse_args(args);
    const Manifest m = execute(plan);
    for (const auto& f : m.files) std::cout << f.hash << "  " << (plan.out / f.file).string() << "\n";
    std::cout << m.summary.dump() << "\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace anosov::cli
