#include "dtl/pointset_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "dtl/error.hpp"

namespace dtl {
namespace {

struct LineReader {
  std::istream& in;
  std::size_t line_no = 0;

  // Next non-blank, non-comment line split on whitespace; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string t; ss >> t;) tokens.push_back(std::move(t));
      if (!tokens.empty()) return true;
    }
    return false;
  }

  Error fail(const std::string& what) const {
    return Error("line " + std::to_string(line_no) + ": " + what);
  }
};

std::int64_t parse_int(const std::string& text, const LineReader& r) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw r.fail("expected integer, got '" + text + "'");
  return v;
}

// Value of a `key=<int>` header token.
std::int64_t header_field(const std::string& token, const std::string& key, const LineReader& r) {
  if (token.rfind(key + "=", 0) != 0) throw r.fail("expected " + key + "=<int>, got '" + token + "'");
  return parse_int(token.substr(key.size() + 1), r);
}

double parse_double(const std::string& text, const LineReader& r) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw r.fail("expected decimal, got '" + text + "'");
  }
  if (used != text.size()) throw r.fail("expected decimal, got '" + text + "'");
  return v;
}

QScalar parse_scalar(const std::string& rat, const std::string& rad, std::int64_t d, const LineReader& r) {
  try {
    return QScalar(parse_rational(rat), parse_rational(rad), d);
  } catch (const Error& e) {
    throw r.fail(e.what());
  }
}

std::int64_t checked_discriminant(std::int64_t d, const LineReader& r) {
  if (!is_squarefree(d)) throw r.fail("D must be a positive square-free integer, got " + std::to_string(d));
  return d;
}

}  // namespace

PointSetData read_pointset(std::istream& in) {
  LineReader r{in};
  std::vector<std::string> tok;
  if (!r.next(tok)) throw Error("empty input: missing header");
  if (tok.size() < 3 || tok[1] != "v1") throw r.fail("unrecognized header");

  if (tok[0] == "dtl-pointset" && tok.size() == 3 && tok[2] == "float") {
    FloatPointSet set;
    while (r.next(tok)) {
      if (tok.size() != 3 || tok[0] != "p") throw r.fail("expected 'p <x> <y>'");
      set.points.push_back({parse_double(tok[1], r), parse_double(tok[2], r)});
    }
    return set;
  }

  if (tok[0] == "dtl-pointset" && tok.size() == 3) {
    ExactPointSet set;
    set.discriminant = checked_discriminant(header_field(tok[2], "D", r), r);
    while (r.next(tok)) {
      if (tok.size() != 5 || tok[0] != "p") throw r.fail("expected 'p <x_rat> <x_rad> <y_rat> <y_rad>'");
      set.points.emplace_back(parse_scalar(tok[1], tok[2], set.discriminant, r),
                              parse_scalar(tok[3], tok[4], set.discriminant, r));
    }
    return set;
  }

  if (tok[0] == "dtl-distmatrix" && tok.size() == 4) {
    const auto d = checked_discriminant(header_field(tok[2], "D", r), r);
    const auto n = header_field(tok[3], "n", r);
    if (n < 0) throw r.fail("n must be non-negative");
    std::vector<std::string> flat;
    while (r.next(tok)) flat.insert(flat.end(), tok.begin(), tok.end());
    const auto expected = static_cast<std::size_t>(n * (n - 1) / 2);
    if (flat.size() != 2 * expected) {
      throw Error("distance matrix with n=" + std::to_string(n) + " needs " + std::to_string(expected) +
                  " entries (" + std::to_string(2 * expected) + " fields), got " +
                  std::to_string(flat.size()) + " fields");
    }
    std::vector<QScalar> upper;
    upper.reserve(expected);
    for (std::size_t i = 0; i < expected; ++i) upper.push_back(parse_scalar(flat[2 * i], flat[2 * i + 1], d, r));
    return DistanceMatrix(static_cast<std::size_t>(n), std::move(upper));
  }

  throw r.fail("unrecognized header '" + tok[0] + "'");
}

PointSetData read_pointset_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(path.string() + ": cannot open for reading");
  try {
    return read_pointset(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_pointset(std::ostream& out, const ExactPointSet& set) {
  out << "dtl-pointset v1 D=" << set.discriminant << '\n';
  for (const auto& p : set.points) {
    out << "p " << format_rational(p.x.rational_part()) << ' ' << format_rational(p.x.radical_part()) << ' '
        << format_rational(p.y.rational_part()) << ' ' << format_rational(p.y.radical_part()) << '\n';
  }
}

void write_pointset(std::ostream& out, const FloatPointSet& set) {
  out << "dtl-pointset v1 float\n" << std::setprecision(17);
  for (const auto& p : set.points) out << "p " << p.x << ' ' << p.y << '\n';
}

void write_distance_matrix(std::ostream& out, const DistanceMatrix& m) {
  out << "dtl-distmatrix v1 D=" << m.discriminant() << " n=" << m.size() << '\n';
  for (const auto& e : m.upper()) {
    out << format_rational(e.rational_part()) << ' ' << format_rational(e.radical_part()) << '\n';
  }
}

}  // namespace dtl
