#include "dtl/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dtl/error.hpp"
#include "dtl/geometry.hpp"
#include "dtl/lattice.hpp"
#include "dtl/pointset_io.hpp"
#include "dtl/rotatability.hpp"
#include "dtl/search.hpp"

#ifndef DTL_VERSION
#define DTL_VERSION "0.0.0"
#endif

namespace dtl {

using json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

namespace {

json num(double v) { return std::stod(format_double(v)); }

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (text.empty() || pos != text.size()) throw UsageError(what + ": expected an integer, got '" + text + "'");
  return v;
}

std::vector<std::int64_t> parse_ints(const std::string& text, std::size_t count, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != count) {
    throw UsageError(what + ": expected " + std::to_string(count) + " comma-separated integers, got '" + text + "'");
  }
  std::vector<std::int64_t> out;
  for (const auto& p : parts) out.push_back(parse_int(p, what));
  return out;
}

std::vector<int> parse_range(const std::string& text, const std::string& what) {
  const auto parts = split(text, ':');
  if (parts.size() != 2 && parts.size() != 3) throw UsageError(what + ": expected lo:hi[:step], got '" + text + "'");
  const auto lo = parse_int(parts[0], what), hi = parse_int(parts[1], what);
  const auto step = parts.size() == 3 ? parse_int(parts[2], what) : 1;
  if (step < 1 || lo > hi) throw UsageError(what + ": need lo <= hi and step >= 1, got '" + text + "'");
  std::vector<int> out;
  for (auto v = lo; v <= hi; v += step) out.push_back(static_cast<int>(v));
  return out;
}

PythTriple parse_triple(const std::string& text) {
  const auto v = parse_ints(text, 3, "--triple");
  const PythTriple t{v[0], v[1], v[2]};
  if (!t.valid()) throw Error(t.str() + " is not a primitive Pythagorean triple");
  return t;
}

int oracle_limit() {
  const char* env = std::getenv("DTL_ORACLE_LIMIT");
  if (env == nullptr || *env == '\0') return kDefaultOracleLimit;
  const auto v = parse_int(env, "DTL_ORACLE_LIMIT");
  if (v < 1) throw UsageError("DTL_ORACLE_LIMIT must be positive, got " + std::string(env));
  return static_cast<int>(v);
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// What a subcommand produced: the data payload plus anything the manifest must record.
struct Output {
  std::string text;
  std::vector<std::string> inputs;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json census_row_json(const ShapeCensus& c) {
  return {{"kind", c.kind.name()},
          {"n", c.n},
          {"include_degenerate", c.include_degenerate},
          {"distinct", c.distinct},
          {"ratio", num(c.ratio())},
          {"elapsed_ms", num(c.elapsed_ms)},
          {"workers", c.workers}};
}

json triple_json(const PythTriple& t) { return json::array({t.p, t.q, t.r}); }
json point_json(const LatticePoint& p) { return json::array({p.u, p.v}); }
json triangle_json(const OriginTriangle& t) {
  return json::array({json::array({0, 0}), point_json(t.a), point_json(t.b)});
}

struct Settings {
  std::string out_path;
  std::string manifest_path;
  std::string format;
  unsigned workers = default_workers();
};

void add_common(CLI::App* sub, Settings& s, bool with_workers) {
  sub->add_option("--out", s.out_path, "Write data to FILE instead of standard output");
  sub->add_option("--manifest", s.manifest_path, "Manifest path (default FILE.manifest.json, or stderr)");
  sub->add_option("--format", s.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  if (with_workers) sub->add_option("--workers", s.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
}

json params_of(const CLI::App* sub) {
  json params = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "out" || name == "manifest") continue;
    const auto& res = opt->results();
    if (!res.empty()) {
      params[name] = res.size() == 1 ? json(res.front()) : json(res);
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distinct triangle census, rotatability checks and configuration search", "dtl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DTL_VERSION);
  Settings s;

  // census
  std::string lattice = "square", gram_text, series_text;
  int n = 0;
  bool include_degenerate = true, proper_only = false, use_oracle = false;
  auto* census_cmd = app.add_subcommand("census", "Distinct triangle shapes in an n x n lattice patch");
  census_cmd->add_option("--lattice", lattice, "square, tri, or general")
      ->check(CLI::IsMember({"square", "tri", "triangular", "general"}))
      ->capture_default_str();
  census_cmd->add_option("--gram", gram_text, "Gram form a,b,c for general lattices");
  auto* census_n = census_cmd->add_option("--n", n, "Grid side")->check(CLI::PositiveNumber);
  auto* census_series = census_cmd->add_option("--series", series_text, "lo:hi[:step]");
  census_n->excludes(census_series);
  census_cmd->add_option("--include-degenerate", include_degenerate, "Count collinear triples")
      ->capture_default_str();
  census_cmd->add_flag("--proper-only", proper_only, "Same as --include-degenerate false");
  census_cmd->add_flag("--oracle", use_oracle, "Brute force over all triples (guarded by DTL_ORACLE_LIMIT)");
  add_common(census_cmd, s, true);

  // rotatable
  std::string triple_text, point_text;
  bool count_triangles = false;
  int limit = 0;
  auto* rot_cmd = app.add_subcommand("rotatable", "Rotatable lattice points and triangles");
  rot_cmd->add_option("--n", n, "Grid side")->check(CLI::PositiveNumber);
  rot_cmd->add_option("--triple", triple_text, "Primitive triple p,q,r");
  rot_cmd->add_option("--point", point_text, "Single point a,b");
  rot_cmd->add_flag("--count-triangles", count_triangles, "Count rotatable origin triangles in [n]^2");
  rot_cmd->add_option("--limit", limit, "Guard on n for --count-triangles");
  add_common(rot_cmd, s, true);

  // constant
  std::int64_t cutoff = 100000;
  auto* const_cmd = app.add_subcommand("constant", "Rotatable-triangle constant: partial sum and tail bound");
  const_cmd->add_option("--cutoff", cutoff, "Hypotenuse cutoff")->capture_default_str();
  add_common(const_cmd, s, false);

  // verify
  std::string check;
  std::int64_t max_r = 50, vn = 0;
  int max_n = 30, m = 5;
  bool rows = false;
  auto* verify_cmd = app.add_subcommand("verify", "Exhaustive checks of the counting machinery");
  verify_cmd->add_option("--check", check, "origin-reduction, minimality, rotation-bound, or spot-check")
      ->required()
      ->check(CLI::IsMember({"origin-reduction", "minimality", "rotation-bound", "spot-check"}));
  verify_cmd->add_option("--n", vn, "Grid side");
  verify_cmd->add_option("--max-r", max_r, "Largest hypotenuse")->capture_default_str();
  verify_cmd->add_option("--max-n", max_n, "Largest grid side")->capture_default_str();
  verify_cmd->add_option("--m", m, "Density parameter for spot-check")->capture_default_str();
  verify_cmd->add_option("--triple", triple_text, "Primitive triple p,q,r for spot-check");
  verify_cmd->add_option("--limit", limit, "Guard on n for minimality");
  verify_cmd->add_flag("--rows", rows, "Emit every rotation-bound case (CSV)");
  add_common(verify_cmd, s, true);

  // ngon
  auto* ngon_cmd = app.add_subcommand("ngon", "Distinct triangles of the regular n-gon");
  auto* ngon_n = ngon_cmd->add_option("--n", n, "Number of vertices");
  auto* ngon_series = ngon_cmd->add_option("--series", series_text, "lo:hi[:step]");
  ngon_n->excludes(ngon_series);
  add_common(ngon_cmd, s, false);

  // search
  std::string ground_text;
  int k = 0;
  std::size_t size_cap = 0, ground_limit = kDefaultGroundLimit;
  double tolerance = kDefaultTolerance;
  auto* search_cmd = app.add_subcommand("search", "Largest subsets spanning at most k distinct triangles");
  search_cmd->add_option("--ground", ground_text, "ngon:<n>, grid:<n>, or file:<path>")->required();
  search_cmd->add_option("--k", k, "Shape budget")->required();
  search_cmd->add_option("--size-cap", size_cap, "Stop growing subsets at this size (0: none)");
  search_cmd->add_option("--limit", ground_limit, "Largest ground set accepted")->capture_default_str();
  search_cmd->add_option("--tolerance", tolerance, "Float ground sets only")->capture_default_str();
  add_common(search_cmd, s, true);

  // pointset
  std::string file;
  auto* ps_cmd = app.add_subcommand("pointset", "Distinct triangles of a point set or distance matrix file");
  ps_cmd->add_option("--file", file, "Input file")->required();
  ps_cmd->add_option("--tolerance", tolerance, "Float point sets only")->capture_default_str();
  ps_cmd->add_option("--include-degenerate", include_degenerate, "Count collinear triples")->capture_default_str();
  add_common(ps_cmd, s, false);

  // triples
  std::int64_t triple_max_r = 0;
  bool count_only = false;
  auto* tr_cmd = app.add_subcommand("triples", "Primitive Pythagorean triples up to a hypotenuse");
  tr_cmd->add_option("--max-r", triple_max_r, "Largest hypotenuse")->required();
  tr_cmd->add_flag("--count", count_only, "Report only the count");
  add_common(tr_cmd, s, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  Output result;
  try {
    auto fmt = [&](const char* fallback) { return s.format.empty() ? std::string(fallback) : s.format; };
    auto elapsed = [&] {
      return num(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    };

    if (sub == census_cmd) {
      if (proper_only) include_degenerate = false;
      LatticeKind kind = LatticeKind::square();
      if (lattice == "tri" || lattice == "triangular") kind = LatticeKind::triangular();
      if (lattice == "general") {
        if (gram_text.empty()) throw UsageError("--lattice general requires --gram a,b,c");
        const auto parts = split(gram_text, ',');
        if (parts.size() != 3) throw UsageError("--gram: expected a,b,c, got '" + gram_text + "'");
        GramForm g;
        try {
          g = {parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2])};
        } catch (const Error& e) {
          throw UsageError(std::string("--gram: ") + e.what());
        }
        kind = LatticeKind::general(g);
      } else if (!gram_text.empty()) {
        throw UsageError("--gram only applies to --lattice general");
      }
      std::vector<int> ns;
      if (!series_text.empty()) {
        ns = parse_range(series_text, "--series");
      } else if (n > 0) {
        ns = {n};
      } else {
        throw UsageError("census requires --n or --series");
      }
      for (int v : ns)
        if (v < 2) throw UsageError("census needs n >= 2, got " + std::to_string(v));
      std::vector<ShapeCensus> rows_out;
      const int olimit = use_oracle ? oracle_limit() : 0;
      for (int v : ns) {
        rows_out.push_back(use_oracle ? all_triples_census(v, kind, include_degenerate, olimit)
                                      : census(kind, v, include_degenerate, s.workers));
      }
      if (fmt("csv") == "csv") {
        result.text = census_csv_header() + "\n";
        for (const auto& c : rows_out) result.text += census_csv_row(c) + "\n";
      } else {
        json j{{"op", "census"}, {"params", params_of(sub)}, {"rows", json::array()}};
        for (const auto& c : rows_out) j["rows"].push_back(census_row_json(c));
        if (rows_out.size() >= 3) {
          const RatioFit f = ratio_fit(std::span<const ShapeCensus>(rows_out));
          j["fit"] = {{"c", num(f.c)}, {"d", num(f.d)}, {"residual", num(f.residual)}};
        }
        result.text = dump(j);
      }
    } else if (sub == rot_cmd) {
      json j;
      if (!point_text.empty()) {
        const auto v = parse_ints(point_text, 2, "--point");
        const LatticePoint p{v[0], v[1]};
        j = {{"op", "rotatable-point"}, {"params", params_of(sub)}, {"point", point_json(p)},
             {"rotatable", is_rotatable_point(p)}, {"split_prime_factor", is_rotatable_point_fast(p)}};
      } else if (count_triangles) {
        if (n < 2) throw UsageError("--count-triangles requires --n >= 2");
        const auto b = count_rotatable_triangles(n, s.workers, limit > 0 ? limit : kDefaultRotatableLimit);
        j = {{"op", "rotatable-triangles"}, {"params", params_of(sub)}, {"count", b.total},
             {"three_vertices_on_box", b.three_on_box}, {"two_vertices_on_box", b.two_on_box}};
      } else {
        if (n < 1 || triple_text.empty()) throw UsageError("rotatable requires --n with --triple, --point, or --count-triangles");
        const PythTriple t = parse_triple(triple_text);
        const auto count = count_rotatable_points(n, t);
        const auto bound = rotatable_points_bound(n, t);
        j = {{"op", "rotatable-points"}, {"params", params_of(sub)}, {"count", count},
             {"bound", bound}, {"pass", count <= bound}};
      }
      j["elapsed_ms"] = elapsed();
      result.text = dump(j);
    } else if (sub == const_cmd) {
      const ConstantSum c = constant_sum(cutoff);
      constexpr double kPublished = 0.0633;
      json j{{"op", "constant"},        {"params", params_of(sub)},        {"triples", c.triples},
             {"partial", num(c.partial)}, {"tail_bound", num(c.tail_bound)}, {"total_bound", num(c.total_bound)},
             {"bound", kPublished},     {"pass", c.total_bound < kPublished}, {"elapsed_ms", elapsed()}};
      result.text = dump(j);
    } else if (sub == verify_cmd) {
      json j{{"op", "verify"}, {"check", check}, {"params", params_of(sub)}};
      std::string csv;
      if (check == "origin-reduction") {
        const int top = vn > 0 ? static_cast<int>(vn) : 6;
        const int olimit = oracle_limit();
        bool pass = true;
        j["rows"] = json::array();
        for (int v = 2; v <= top; ++v) {
          for (bool incl : {true, false}) {
            const auto fast = grid_census(v, incl, s.workers).distinct;
            const auto slow = all_triples_census(v, LatticeKind::square(), incl, olimit).distinct;
            pass = pass && fast == slow;
            j["rows"].push_back({{"n", v}, {"include_degenerate", incl}, {"census", fast}, {"oracle", slow}});
          }
        }
        j["pass"] = pass;
      } else if (check == "minimality") {
        const auto r = verify_minimality(vn > 0 ? static_cast<int>(vn) : 8, limit > 0 ? limit : kDefaultMinimalityLimit);
        j["checked"] = r.checked;
        j["axis_parallel_skipped"] = r.axis_parallel_skipped;
        j["violations"] = json::array();
        for (const auto& t : r.violations) j["violations"].push_back(triangle_json(t));
        j["pass"] = r.violations.empty() && r.checked > 0;
      } else if (check == "rotation-bound") {
        const auto r = rotation_bound_check(max_r, max_n, rows);
        j["cases"] = r.cases;
        j["violations"] = json::array();
        for (const auto& c : r.violations) {
          j["violations"].push_back({{"triple", triple_json(c.triple)}, {"n", c.n}, {"count", c.count}, {"bound", c.bound}});
        }
        j["pass"] = r.violations.empty();
        csv = "p,q,r,n,count,bound,pass\n";
        for (const auto& c : r.rows) {
          csv += std::to_string(c.triple.p) + "," + std::to_string(c.triple.q) + "," + std::to_string(c.triple.r) + "," +
                 std::to_string(c.n) + "," + std::to_string(c.count) + "," + std::to_string(c.bound) + "," +
                 (c.count <= c.bound ? "true" : "false") + "\n";
        }
      } else {
        const std::int64_t m4 = std::int64_t(m) * m * m * m;
        const std::int64_t sn = vn > 0 ? vn : m4 * m;
        PythTriple t{3, 4, 5};
        if (!triple_text.empty()) {
          t = parse_triple(triple_text);
        } else if (m > 4 && sn >= m4 * m) {
          t = smallest_primitive_triple_at_least(2 * m4 * sn);
        }
        const auto r = large_hypotenuse_spot_check(m, sn, t);
        j["triple"] = triple_json(r.triple);
        j["count"] = r.count;
        j["bound"] = num(r.bound);
        j["pass"] = r.pass;
      }
      j["elapsed_ms"] = elapsed();
      if (fmt("json") == "csv") {
        if (check != "rotation-bound") throw UsageError("--format csv is only available for --check rotation-bound");
        result.text = csv;
      } else {
        result.text = dump(j);
      }
    } else if (sub == ngon_cmd) {
      std::vector<int> ns;
      const bool table = !series_text.empty();
      if (table) {
        ns = parse_range(series_text, "--series");
      } else if (n != 0) {
        ns = {n};
      } else {
        throw UsageError("ngon requires --n or --series");
      }
      const auto table_rows = ngon_asymptotic_check(ns);
      if (fmt("csv") == "csv") {
        result.text = table ? "n,count,ratio\n" : "n,count\n";
        for (const auto& r : table_rows) {
          result.text += std::to_string(r.n) + "," + std::to_string(r.count) + (table ? "," + format_double(r.ratio) : "") + "\n";
        }
      } else {
        json j{{"op", "ngon"}, {"params", params_of(sub)}, {"rows", json::array()}};
        for (const auto& r : table_rows) j["rows"].push_back({{"n", r.n}, {"count", r.count}, {"ratio", num(r.ratio)}});
        result.text = dump(j);
      }
    } else if (sub == search_cmd) {
      const auto colon = ground_text.find(':');
      if (colon == std::string::npos) throw UsageError("--ground: expected ngon:<n>, grid:<n>, or file:<path>");
      const std::string gkind = ground_text.substr(0, colon), garg = ground_text.substr(colon + 1);
      GroundSet ground;
      if (gkind == "ngon") {
        ground = make_ngon_ground_set(static_cast<int>(parse_int(garg, "--ground ngon")));
      } else if (gkind == "grid") {
        ground = make_grid_ground_set(static_cast<int>(parse_int(garg, "--ground grid")));
      } else if (gkind == "file") {
        ground = ground_from_file(garg);
        result.inputs.push_back(garg);
      } else {
        throw UsageError("--ground: unknown kind '" + gkind + "'");
      }
      if (auto* f = std::get_if<FloatGround>(&ground.data)) f->tolerance = tolerance;
      SearchOptions opts;
      opts.size_cap = size_cap;
      opts.workers = s.workers;
      opts.ground_limit = ground_limit;
      const SearchResult r = max_subset_with_k_shapes(ground, k, opts);
      if (fmt("json") == "csv") {
        result.text = "witness,size,indices,shape_count\n";
        for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
          std::string idx;
          for (auto v : r.witnesses[i]) idx += (idx.empty() ? "" : " ") + std::to_string(v);
          result.text += std::to_string(i) + "," + std::to_string(r.witnesses[i].size()) + "," + idx + "," +
                         std::to_string(subset_shape_count(ground, r.witnesses[i])) + "\n";
        }
      } else {
        json j{{"op", "search"},
               {"params", params_of(sub)},
               {"ground", {{"label", ground.label}, {"mode", ground.mode()}, {"size", ground.size()}}},
               {"k", k},
               {"max_size", r.max_size},
               {"witness_count", r.witnesses.size()},
               {"witnesses", json::array()}};
        for (const auto& w : r.witnesses) {
          const auto shapes = subset_shape_labels(ground, w);
          j["witnesses"].push_back({{"indices", w},
                                    {"shape_count", shapes.size()},
                                    {"shapes", shapes},
                                    {"verified", shapes.size() <= static_cast<std::size_t>(k)}});
        }
        j["nodes_explored"] = r.nodes_explored;
        j["elapsed_ms"] = num(r.elapsed_ms);
        result.text = dump(j);
      }
    } else if (sub == ps_cmd) {
      result.inputs.push_back(file);
      const PointSetData data = read_pointset_file(file);
      json j{{"op", "pointset"}, {"params", params_of(sub)}};
      std::vector<std::string> shapes;
      std::vector<std::array<std::string, 3>> sides;
      if (const auto* e = std::get_if<ExactPointSet>(&data)) {
        const auto c = distinct_triangle_count(e->points, include_degenerate);
        j["mode"] = "coordinates";
        j["points"] = e->points.size();
        j["discriminant"] = e->discriminant;
        for (const auto& sh : c.shapes) sides.push_back({sh.s1().str(), sh.s2().str(), sh.s3().str()});
      } else if (const auto* f = std::get_if<FloatPointSet>(&data)) {
        const auto c = float_distinct_triangle_count(f->points, tolerance, include_degenerate);
        j["mode"] = "float";
        j["points"] = f->points.size();
        j["tolerance"] = tolerance;
        for (const auto& sh : c.shapes) sides.push_back({format_double(sh[0]), format_double(sh[1]), format_double(sh[2])});
      } else {
        const auto& dm = std::get<DistanceMatrix>(data);
        const auto c = distinct_triangle_count(dm, include_degenerate);
        j["mode"] = "distance-matrix";
        j["points"] = dm.size();
        j["discriminant"] = dm.discriminant();
        for (const auto& sh : c.shapes) sides.push_back({sh.s1().str(), sh.s2().str(), sh.s3().str()});
      }
      if (fmt("json") == "csv") {
        result.text = "s1,s2,s3\n";
        for (const auto& sd : sides) result.text += sd[0] + "," + sd[1] + "," + sd[2] + "\n";
      } else {
        j["count"] = sides.size();
        j["shapes"] = json::array();
        for (const auto& sd : sides) j["shapes"].push_back(sd);
        result.text = dump(j);
      }
    } else if (sub == tr_cmd) {
      const auto triples = enum_primitive_triples(triple_max_r);
      if (count_only || fmt("csv") == "json") {
        json j{{"op", "triples"}, {"params", params_of(sub)}, {"count", triples.size()},
               {"density", num(static_cast<double>(triples.size()) / static_cast<double>(triple_max_r))}};
        if (!count_only) {
          j["triples"] = json::array();
          for (const auto& t : triples) j["triples"].push_back(triple_json(t));
        }
        result.text = dump(j);
      } else {
        result.text = "p,q,r\n";
        for (const auto& t : triples) {
          result.text += std::to_string(t.p) + "," + std::to_string(t.q) + "," + std::to_string(t.r) + "\n";
        }
      }
    }

    json manifest{{"command", sub->get_name()},
                  {"argv", args},
                  {"params", params_of(sub)},
                  {"workers", s.workers},
                  {"artifact_version", DTL_VERSION},
                  {"started_at", started},
                  {"finished_at", utc_now()},
                  {"input_digest", nullptr},
                  {"outputs", json::array()},
                  {"payload_sha256", sha256_hex(result.text)}};
    if (!result.inputs.empty()) {
      json digests = json::object();
      for (const auto& path : result.inputs) digests[path] = "sha256:" + sha256_file(path);
      manifest["input_digest"] = result.inputs.size() == 1 ? digests.begin().value() : digests;
    }
    if (s.out_path.empty()) {
      out << result.text;
      out.flush();
      manifest["outputs"].push_back("<stdout>");
    } else {
      std::ofstream f(s.out_path, std::ios::binary);
      if (!f || !(f << result.text)) throw Error(s.out_path + ": cannot write output");
      manifest["outputs"].push_back(s.out_path);
    }
    std::string mpath = s.manifest_path;
    if (mpath.empty() && !s.out_path.empty()) mpath = s.out_path + ".manifest.json";
    if (mpath.empty()) {
      err << manifest.dump() << "\n";
    } else {
      std::ofstream f(mpath);
      if (!f || !(f << manifest.dump(2) << "\n")) throw Error(mpath + ": cannot write manifest");
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace dtl
