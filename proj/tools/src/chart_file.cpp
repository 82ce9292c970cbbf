#include "lafed/cli/chart_file.hpp"

#include <rapidjson/error/en.h>
#include <rapidjson/reader.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace lafed::cli {

using nlohmann::json;

InputError::InputError(const std::string& what, std::string ptr, int ln, int col)
    : std::runtime_error(what), pointer(std::move(ptr)), line(ln), column(col) {}

namespace {

struct Pos {
  int line = 0;
  int column = 0;
};

Pos pos_at(const std::string& text, std::size_t offset) {
  Pos p{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

// SAX pass recording the start offset of every value by JSON pointer.
class PositionIndex {
 public:
  using Ch = char;

  PositionIndex(const std::string& text, rapidjson::StringStream& ss) : text_(text), ss_(ss) {}

  std::map<std::string, std::size_t> offsets;

  bool Null() { return value(); }
  bool Bool(bool) { return value(); }
  bool Int(int) { return value(); }
  bool Uint(unsigned) { return value(); }
  bool Int64(int64_t) { return value(); }
  bool Uint64(uint64_t) { return value(); }
  bool Double(double) { return value(); }
  bool RawNumber(const char*, rapidjson::SizeType, bool) { return value(); }
  bool String(const char*, rapidjson::SizeType, bool) { return value(); }
  bool StartObject() {
    value();
    frames_.push_back({false, 0, ""});
    return true;
  }
  bool Key(const char* s, rapidjson::SizeType len, bool) {
    frames_.back().key.assign(s, len);
    prev_ = ss_.Tell();
    return true;
  }
  bool EndObject(rapidjson::SizeType) { return close(); }
  bool StartArray() {
    value();
    frames_.push_back({true, 0, ""});
    return true;
  }
  bool EndArray(rapidjson::SizeType) { return close(); }

 private:
  struct Frame {
    bool array;
    int index;
    std::string key;
  };

  std::string path() const {
    std::string p;
    for (auto& f : frames_) p += "/" + (f.array ? std::to_string(f.index - 1) : f.key);
    return p;
  }
  bool value() {
    std::size_t start = prev_;
    while (start < text_.size() && std::string_view(" \t\r\n,:").find(text_[start]) != std::string_view::npos)
      ++start;
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
    offsets[path()] = start;
    prev_ = ss_.Tell();
    return true;
  }
  bool close() {
    frames_.pop_back();
    prev_ = ss_.Tell();
    return true;
  }

  const std::string& text_;
  rapidjson::StringStream& ss_;
  std::vector<Frame> frames_;
  std::size_t prev_ = 0;
};

class Reader {
 public:
  Reader(std::string text, std::string origin) : text_(std::move(text)), origin_(std::move(origin)) {
    rapidjson::StringStream ss(text_.c_str());
    PositionIndex index(text_, ss);
    rapidjson::Reader reader;
    auto ok = reader.Parse(ss, index);
    if (!ok) {
      Pos p = pos_at(text_, ok.Offset());
      throw InputError(origin_ + ":" + std::to_string(p.line) + ":" + std::to_string(p.column) +
                           ": syntax error: " + rapidjson::GetParseError_En(ok.Code()),
                       "", p.line, p.column);
    }
    offsets_ = std::move(index.offsets);
    doc_ = json::parse(text_);
  }

  const json& doc() const { return doc_; }

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    Pos p;
    for (std::string q = ptr;; q = q.substr(0, q.rfind('/'))) {
      auto it = offsets_.find(q);
      if (it != offsets_.end()) {
        p = pos_at(text_, it->second);
        break;
      }
      if (q.empty()) break;
    }
    throw InputError(origin_ + ":" + std::to_string(p.line) + ":" + std::to_string(p.column) + ": " +
                         (ptr.empty() ? "/" : ptr) + ": " + msg,
                     ptr, p.line, p.column);
  }

  const json& field(const json& obj, const std::string& ptr, const char* key) const {
    if (!obj.is_object()) fail(ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(ptr, std::string("missing key \"") + key + "\"");
    return *it;
  }

  int integer(const json& v, const std::string& ptr, int lo, int hi, const char* what) const {
    if (v.is_number_float()) fail(ptr, std::string("non-integer ") + what);
    if (!v.is_number_integer()) fail(ptr, std::string("expected an integer ") + what);
    const auto x = v.get<long long>();
    if (x < lo || x > hi)
      fail(ptr, std::string(what) + " " + std::to_string(x) + " out of range [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
    return static_cast<int>(x);
  }

  Q rational(const json& v, const std::string& ptr) const {
    if (!v.is_string()) fail(ptr, "coefficient must be a fraction string");
    const auto s = v.get<std::string>();
    try {
      return parse_rational(s);
    } catch (const std::invalid_argument& e) {
      fail(ptr, "malformed fraction \"" + s + "\": " + e.what());
    }
  }

  Poly poly(const json& v, const std::string& ptr, int n) const {
    if (!v.is_array()) fail(ptr, "polynomial must be a list of [coefficient, exponents]");
    Poly p;
    for (std::size_t t = 0; t < v.size(); ++t) {
      const std::string tp = ptr + "/" + std::to_string(t);
      const auto& term = v[t];
      if (!term.is_array() || term.size() != 2) fail(tp, "term must be [coefficient, exponents]");
      Q c = rational(term[0], tp + "/0");
      const auto& ex = term[1];
      if (!ex.is_array()) fail(tp + "/1", "exponents must be a list");
      if (static_cast<int>(ex.size()) != n)
        fail(tp + "/1", "expected " + std::to_string(n) + " exponents, got " + std::to_string(ex.size()));
      XMono m;
      for (int a = 0; a < n; ++a)
        m.e[a] = static_cast<std::uint8_t>(integer(ex[a], tp + "/1/" + std::to_string(a), 0, 255, "exponent"));
      p += Poly::monomial(m, c);
    }
    return p;
  }

 private:
  std::string text_;
  std::string origin_;
  std::map<std::string, std::size_t> offsets_;
  json doc_;
};

json poly_json(const Poly& p, int n) {
  json out = json::array();
  for (auto& [m, c] : p.terms()) {
    json ex = json::array();
    for (int a = 0; a < n; ++a) ex.push_back(static_cast<int>(m.e[a]));
    out.push_back({c.get_str(), ex});
  }
  return out;
}

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

ChartFile parse_chart_text(const std::string& text, const std::string& origin) {
  Reader rd(text, origin);
  const json& d = rd.doc();
  if (!d.is_object()) rd.fail("", "chart file must be a JSON object");
  const int version = rd.integer(rd.field(d, "", "version"), "/version", 1, 1, "version");
  (void)version;

  ChartFile out;
  const int n = rd.integer(rd.field(d, "", "n"), "/n", 0, kMaxBase, "n");
  const int r = rd.integer(rd.field(d, "", "r"), "/r", 1, kMaxRank, "r");
  out.chart = AlgebroidChart(n, r);
  if (d.contains("name")) {
    if (!d["name"].is_string()) rd.fail("/name", "name must be a string");
    out.name = d["name"].get<std::string>();
  }
  out.chart.name = out.name;

  auto entries = [&](const char* key, bool required) -> const json* {
    if (!d.contains(key)) {
      if (required) rd.fail("", std::string("missing key \"") + key + "\"");
      return nullptr;
    }
    if (!d[key].is_array()) rd.fail(std::string("/") + key, "expected a list");
    return &d[key];
  };

  if (auto* an = entries("anchor", true)) {
    for (std::size_t t = 0; t < an->size(); ++t) {
      const std::string p = "/anchor/" + std::to_string(t);
      const auto& e = (*an)[t];
      const int i = rd.integer(rd.field(e, p, "e"), p + "/e", 1, r, "frame index");
      const int a = rd.integer(rd.field(e, p, "x"), p + "/x", 1, std::max(n, 1), "coordinate index");
      if (n == 0) rd.fail(p + "/x", "coordinate index out of range: the base has dimension 0");
      out.chart.set_anchor(i - 1, a - 1, out.chart.anchor(i - 1, a - 1) + rd.poly(rd.field(e, p, "poly"), p + "/poly", n));
    }
  }
  if (auto* br = entries("bracket", false)) {
    for (std::size_t t = 0; t < br->size(); ++t) {
      const std::string p = "/bracket/" + std::to_string(t);
      const auto& e = (*br)[t];
      const int i = rd.integer(rd.field(e, p, "i"), p + "/i", 1, r, "frame index");
      const int j = rd.integer(rd.field(e, p, "j"), p + "/j", 1, r, "frame index");
      const int k = rd.integer(rd.field(e, p, "k"), p + "/k", 1, r, "frame index");
      if (i == j) rd.fail(p + "/j", "bracket entries need i != j");
      out.chart.set_c(i - 1, j - 1, k - 1,
                      out.chart.c(i - 1, j - 1, k - 1) + rd.poly(rd.field(e, p, "poly"), p + "/poly", n));
    }
  }
  if (auto* cn = entries("connection", false)) {
    Connection g(r);
    for (std::size_t t = 0; t < cn->size(); ++t) {
      const std::string p = "/connection/" + std::to_string(t);
      const auto& e = (*cn)[t];
      const int i = rd.integer(rd.field(e, p, "i"), p + "/i", 1, r, "frame index");
      const int j = rd.integer(rd.field(e, p, "j"), p + "/j", 1, r, "frame index");
      const int k = rd.integer(rd.field(e, p, "k"), p + "/k", 1, r, "frame index");
      g.at(i - 1, j - 1, k - 1) += rd.poly(rd.field(e, p, "poly"), p + "/poly", n);
    }
    out.connection = g;
  }
  if (auto* pi = entries("pi", false)) {
    for (std::size_t t = 0; t < pi->size(); ++t) {
      const std::string p = "/pi/" + std::to_string(t);
      const auto& e = (*pi)[t];
      const int s = rd.integer(rd.field(e, p, "hbar"), p + "/hbar", 0, 64, "hbar power");
      const auto& w = rd.field(e, p, "wedge");
      if (!w.is_array()) rd.fail(p + "/wedge", "wedge must be a list of frame indices");
      std::vector<int> idx;
      for (std::size_t q = 0; q < w.size(); ++q)
        idx.push_back(rd.integer(w[q], p + "/wedge/" + std::to_string(q), 1, r, "frame index") - 1);
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
          if (idx[a] == idx[b]) rd.fail(p + "/wedge", "repeated frame index");
      if (static_cast<int>(out.pi.size()) <= s) out.pi.resize(s + 1);
      out.pi[s] += EPolyvector::wedge_of(idx, rd.poly(rd.field(e, p, "poly"), p + "/poly", n));
    }
  }
  if (d.contains("defaults")) {
    const auto& df = d["defaults"];
    if (!df.is_object()) rd.fail("/defaults", "expected an object");
    auto opt = [&](const char* key, int& slot, int lo, int hi) {
      if (df.contains(key)) slot = rd.integer(df[key], std::string("/defaults/") + key, lo, hi, key);
    };
    opt("order", out.defaults.order, 2, 16);
    opt("jetCap", out.defaults.jet_cap, 1, 8);
    opt("hbarOrder", out.defaults.hbar_order, 0, 8);
    opt("xDegree", out.defaults.x_degree, 0, 6);
  }
  out.digest = "fnv1a64:" + fnv1a(d.dump());
  return out;
}

ChartFile parse_chart(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot read file", "", 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_chart_text(ss.str(), path);
}

std::string chart_to_json(const ChartFile& c) {
  const auto& ch = c.chart;
  const int n = ch.n(), r = ch.r();
  json d;
  d["version"] = 1;
  d["name"] = c.name;
  d["n"] = n;
  d["r"] = r;
  d["anchor"] = json::array();
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < n; ++a)
      if (!ch.anchor(i, a).is_zero()) d["anchor"].push_back({{"e", i + 1}, {"x", a + 1}, {"poly", poly_json(ch.anchor(i, a), n)}});
  d["bracket"] = json::array();
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int k = 0; k < r; ++k)
        if (!ch.c(i, j, k).is_zero())
          d["bracket"].push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"poly", poly_json(ch.c(i, j, k), n)}});
  if (c.connection) {
    d["connection"] = json::array();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k)
          if (!(*c.connection)(i, j, k).is_zero())
            d["connection"].push_back(
                {{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"poly", poly_json((*c.connection)(i, j, k), n)}});
  }
  if (!c.pi.empty()) {
    d["pi"] = json::array();
    for (std::size_t s = 0; s < c.pi.size(); ++s)
      for (auto& [m, f] : c.pi[s].terms) {
        json idx = json::array();
        for (int i : mask_indices(m)) idx.push_back(i + 1);
        d["pi"].push_back({{"hbar", s}, {"wedge", idx}, {"poly", poly_json(f, n)}});
      }
  }
  d["defaults"] = {{"order", c.defaults.order},
                   {"jetCap", c.defaults.jet_cap},
                   {"hbarOrder", c.defaults.hbar_order},
                   {"xDegree", c.defaults.x_degree}};
  return d.dump(2) + "\n";
}

Connection connection_for(const ChartFile& c) { return c.connection ? *c.connection : torsion_free(c.chart); }

}  // namespace lafed::cli
