#include "codec/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace codec {
namespace {

constexpr char kMagic[4] = {'C', 'O', 'D', 'C'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint16_t kFlagInternalDensities = 1u << 0;
constexpr std::uint16_t kFlagWeightedSource = 1u << 1;

// Little-endian scalar writer/reader, independent of host byte order.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void bytes(const void* data, std::size_t count) {
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(count));
  }
  void u16(std::uint16_t v) { unsigned_value(v); }
  void u32(std::uint32_t v) { unsigned_value(v); }
  void u64(std::uint64_t v) { unsigned_value(v); }
  void f64(double v) { unsigned_value(std::bit_cast<std::uint64_t>(v)); }

 private:
  template <typename T>
  void unsigned_value(T v) {
    unsigned char buffer[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buffer[i] = (v >> (8 * i)) & 0xff;
    bytes(buffer, sizeof(T));
  }

  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(void* data, std::size_t count, const char* field) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in_.gcount()) != count)
      throw FormatError(std::string("truncated file while reading ") + field);
  }
  std::uint16_t u16(const char* field) { return unsigned_value<std::uint16_t>(field); }
  std::uint32_t u32(const char* field) { return unsigned_value<std::uint32_t>(field); }
  std::uint64_t u64(const char* field) { return unsigned_value<std::uint64_t>(field); }
  double f64(const char* field) { return std::bit_cast<double>(unsigned_value<std::uint64_t>(field)); }
  bool at_end() {
    in_.peek();
    return in_.eof();
  }

 private:
  template <typename T>
  T unsigned_value(const char* field) {
    unsigned char buffer[sizeof(T)];
    bytes(buffer, sizeof(T), field);
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= T(buffer[i]) << (8 * i);
    return v;
  }

  std::istream& in_;
};

bool numeric_token(const std::string& token) {
  char* end = nullptr;
  std::strtod(token.c_str(), &end);
  return end != token.c_str() && *end == '\0';
}

LoadedGraph load_edge_list(std::istream& in) {
  struct Entry {
    std::uint64_t u, v;
    double w;
  };
  std::vector<Entry> entries;
  std::map<std::uint64_t, Vertex> compact;
  std::size_t dropped = 0;

  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const std::size_t comment = line.find('#');
    if (comment != std::string::npos) line.resize(comment);
    std::istringstream tokens(line);
    std::vector<std::string> fields;
    std::string token;
    while (tokens >> token) fields.push_back(token);
    if (fields.empty()) continue;
    if (fields.size() != 2 && fields.size() != 3)
      throw ParseError("line " + std::to_string(line_no) + ": expected 'u v [w]'");
    for (const auto& f : fields) {
      if (!numeric_token(f))
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric token '" + f + "'");
    }
    const double u_raw = std::stod(fields[0]);
    const double v_raw = std::stod(fields[1]);
    if (u_raw < 0 || v_raw < 0 || u_raw != std::floor(u_raw) || v_raw != std::floor(v_raw))
      throw ParseError("line " + std::to_string(line_no) + ": vertex ids must be non-negative integers");
    const double w = fields.size() == 3 ? std::stod(fields[2]) : 1.0;
    if (w < 0.0 || w > 1.0)
      throw ParseError("line " + std::to_string(line_no) + ": weight outside [0, 1]");

    const auto u = static_cast<std::uint64_t>(u_raw);
    const auto v = static_cast<std::uint64_t>(v_raw);
    if (u == v) {
      ++dropped;  // self-loops are not representable
      continue;
    }
    compact.emplace(u, 0);
    compact.emplace(v, 0);
    entries.push_back({u, v, w});
  }

  LoadedGraph out;
  out.dropped_self_loops = dropped;
  out.original_ids.reserve(compact.size());
  Vertex next = 0;
  for (auto& [original, id] : compact) {
    id = next++;
    out.original_ids.push_back(original);
  }
  out.graph = Graph(compact.size());
  for (const Entry& e : entries) {
    out.graph.set_weight(compact[e.u], compact[e.v], e.w);  // duplicates overwrite
  }
  return out;
}

LoadedGraph load_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      // Trim surrounding whitespace.
      const auto begin = cell.find_first_not_of(" \t\r");
      const auto end = cell.find_last_not_of(" \t\r");
      cell = begin == std::string::npos ? "" : cell.substr(begin, end - begin + 1);
      if (!numeric_token(cell))
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric cell '" + cell + "'");
      row.push_back(std::stod(cell));
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("line " + std::to_string(line_no) + ": ragged row");
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  if (n == 0) throw ParseError("line 1: empty matrix");
  if (rows.front().size() != n) throw ParseError("line 1: matrix is not square");

  LoadedGraph out;
  out.graph = Graph(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 0.0) ++out.dropped_self_loops;  // diagonal entries are dropped
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = 0.5 * (rows[i][j] + rows[j][i]);  // symmetrize
      if (w < 0.0 || w > 1.0)
        throw ParseError("line " + std::to_string(i + 1) + ": weight outside [0, 1]");
      out.graph.set_weight(static_cast<Vertex>(i), static_cast<Vertex>(j), w);
    }
  }
  return out;
}

}  // namespace

void save_compressed(const CompressedGraph& c, const std::filesystem::path& path) {
  if (c.membership.size() != c.n) throw FormatError("membership length does not match n");
  if (c.red.size() != std::size_t(c.k) * (c.k - 1) / 2) throw FormatError("red size does not match k");
  if (!std::is_sorted(c.irregular_pairs.begin(), c.irregular_pairs.end()))
    throw FormatError("irregular pair list not sorted");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");

  Writer w(out);
  w.bytes(kMagic, sizeof(kMagic));
  w.u16(kVersion);
  std::uint16_t flags = 0;
  if (!c.internal_densities.empty()) flags |= kFlagInternalDensities;
  if (c.weighted_source) flags |= kFlagWeightedSource;
  w.u16(flags);
  w.u64(c.n);
  w.u32(c.k);
  w.f64(c.eps);
  for (std::uint32_t id : c.membership) w.u32(id);
  for (double d : c.red) w.f64(d);
  for (double d : c.internal_densities) w.f64(d);
  w.u32(static_cast<std::uint32_t>(c.irregular_pairs.size()));
  for (const auto& [s, t] : c.irregular_pairs) {
    w.u32(s);
    w.u32(t);
  }
  if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

CompressedGraph load_compressed(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  Reader r(in);

  char magic[4];
  r.bytes(magic, sizeof(magic), "magic");
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw FormatError("bad magic");
  const std::uint16_t version = r.u16("version");
  if (version != kVersion) throw FormatError("unsupported version " + std::to_string(version));
  const std::uint16_t flags = r.u16("flags");
  if (flags & ~(kFlagInternalDensities | kFlagWeightedSource))
    throw FormatError("unknown flag bits set");

  CompressedGraph c;
  c.n = r.u64("n");
  c.k = r.u32("k");
  c.eps = r.f64("eps");
  if (c.n > (1ull << 32)) throw FormatError("n is implausibly large");
  if (c.k > c.n) throw FormatError("k exceeds n");
  c.weighted_source = flags & kFlagWeightedSource;

  c.membership.resize(c.n);
  for (auto& id : c.membership) {
    id = r.u32("membership");
    if (id > c.k) throw FormatError("membership id exceeds k");
  }
  c.red.resize(std::size_t(c.k) * (c.k - 1) / 2);
  for (auto& d : c.red) {
    d = r.f64("red");
    if (!(d >= 0.0 && d <= 1.0)) throw FormatError("red entry outside [0, 1]");
  }
  if (flags & kFlagInternalDensities) {
    c.internal_densities.resize(c.k);
    for (auto& d : c.internal_densities) {
      d = r.f64("internal densities");
      if (!(d >= 0.0 && d <= 1.0)) throw FormatError("internal density outside [0, 1]");
    }
  }
  const std::uint32_t irregular = r.u32("irregular pair count");
  c.irregular_pairs.resize(irregular);
  for (std::size_t p = 0; p < c.irregular_pairs.size(); ++p) {
    auto& [s, t] = c.irregular_pairs[p];
    s = r.u32("irregular pair");
    t = r.u32("irregular pair");
    if (s < 1 || t <= s || t > c.k) throw FormatError("irregular pair ids out of order");
    // The list must be strictly ascending; lookups binary-search it.
    if (p > 0 && !(c.irregular_pairs[p - 1] < c.irregular_pairs[p]))
      throw FormatError("irregular pair list not sorted");
  }
  if (!r.at_end()) throw FormatError("trailing bytes after irregular pairs");
  return c;
}

LoadedGraph load_graph(const std::filesystem::path& path, GraphFormat format) {
  if (format == GraphFormat::kAuto) {
    format = path.extension() == ".csv" ? GraphFormat::kCsv : GraphFormat::kEdgeList;
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return format == GraphFormat::kCsv ? load_csv(in) : load_edge_list(in);
}

void save_graph_csv(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  out.precision(17);
  for (Vertex i = 0; i < g.order(); ++i) {
    const auto row = g.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << row[j];
    }
    out << '\n';
  }
}

void write_pgm(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  out << "P5\n" << g.order() << ' ' << g.order() << "\n255\n";
  std::vector<unsigned char> row_pixels(g.order());
  for (Vertex i = 0; i < g.order(); ++i) {
    const auto row = g.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      row_pixels[j] = static_cast<unsigned char>(std::lround(row[j] * 255.0));
    }
    out.write(reinterpret_cast<const char*>(row_pixels.data()),
              static_cast<std::streamsize>(row_pixels.size()));
  }
}

void save_labels(const LabelVector& labels, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  for (std::uint32_t label : labels) out << label << '\n';
}

LabelVector load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  LabelVector labels;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const std::size_t comment = line.find('#');
    if (comment != std::string::npos) line.resize(comment);
    std::istringstream tokens(line);
    std::string token;
    if (!(tokens >> token)) continue;
    if (!numeric_token(token))
      throw ParseError("line " + std::to_string(line_no) + ": non-numeric label '" + token + "'");
    labels.push_back(static_cast<std::uint32_t>(std::stoul(token)));
  }
  return labels;
}

void save_id_map(const std::vector<std::uint64_t>& ids, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  out << "# compact_id original_id\n";
  for (std::size_t i = 0; i < ids.size(); ++i) out << i << ' ' << ids[i] << '\n';
}

}  // namespace codec
