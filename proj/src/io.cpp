#include "anosov/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "anosov/error.hpp"

namespace anosov {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::IdenticalPoints: return "IdenticalPoints";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::EmptySubspace: return "EmptySubspace";
    case ErrorCode::NotTimelike: return "NotTimelike";
    case ErrorCode::IdenticalLines: return "IdenticalLines";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SingularGenerator: return "SingularGenerator";
    case ErrorCode::DeterminantNotUnit: return "DeterminantNotUnit";
    case ErrorCode::BallTooLarge: return "BallTooLarge";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::PingPongFailed: return "PingPongFailed";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::NoGap: return "NoGap";
    case ErrorCode::NotGeodesic: return "NotGeodesic";
    case ErrorCode::LpStall: return "LpStall";
    case ErrorCode::NoWitnesses: return "NoWitnesses";
    case ErrorCode::TransversalityFailure: return "TransversalityFailure";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace anosov

namespace anosov::io {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);  // no "-0"
  return buf;
}

std::string group_hash(const groups::GroupSpec& spec) {
  std::string text = std::to_string(spec.dim) + (spec.projective ? "P" : "L");
  for (std::size_t i = 0; i < spec.size(); ++i) {
    text += '|';
    if (spec.rational()) {
      text += (*spec.exact)[i].key();
    } else {
      const Matrix& g = spec.generators[i];
      for (Eigen::Index r = 0; r < g.rows(); ++r)
        for (Eigen::Index c = 0; c < g.cols(); ++c) text += format_double(g(r, c)) + ',';
    }
  }
  return fnv1a_hex(text);
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto& rows = j.contains("matrix") ? j.at("matrix") : j;
    const auto n = static_cast<Eigen::Index>(rows.size());
    if (n == 0) throw Error(ErrorCode::ParseError, "empty matrix");
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto& row = rows.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != n) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
      for (Eigen::Index c = 0; c < n; ++c) {
        const auto& e = row.at(static_cast<std::size_t>(c));
        m(r, c) = e.is_string() ? parse_rational(e.get<std::string>()).get_d() : e.get<double>();
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

std::string write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
  return fnv1a_hex(text);
}

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

std::string csv_text(const std::string& meta, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  out << "# " << meta << "\n";
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

namespace {

constexpr char kMagic[8] = {'A', 'N', 'B', 'A', 'L', 'L', '0', '1'};

template <class T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

}  // namespace

void write_ball_cache(const groups::WordBall& ball, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(kMagic, sizeof kMagic);
  put(out, static_cast<std::uint32_t>(ball.spec.dim));
  put(out, static_cast<std::uint32_t>(ball.radius));
  put(out, static_cast<std::uint64_t>(ball.elements.size()));
  for (const auto& g : ball.elements) {
    put(out, static_cast<std::uint32_t>(g.length));
    for (int s : g.word) put(out, static_cast<std::int32_t>(s));
    for (Eigen::Index r = 0; r < g.matrix.rows(); ++r)
      for (Eigen::Index c = 0; c < g.matrix.cols(); ++c) put(out, g.matrix(r, c));
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

BallCacheHeader read_ball_cache_header(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[8];
  BallCacheHeader h;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&h.dim), sizeof h.dim);
  in.read(reinterpret_cast<char*>(&h.radius), sizeof h.radius);
  in.read(reinterpret_cast<char*>(&h.count), sizeof h.count);
  if (!in || !std::equal(magic, magic + 8, kMagic)) throw Error(ErrorCode::ParseError, "not a ball cache: " + path.string());
  return h;
}

}  // namespace anosov::io
