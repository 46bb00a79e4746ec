#include "groupctl/textio.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "groupctl/error.hpp"

namespace groupctl {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw ParseError("bad integer '" + s + "' for " + what);
  return v;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  const std::int64_t v = parse_int(s, what);
  if (v < 0) throw ParseError(what + " must be non-negative");
  return static_cast<std::size_t>(v);
}

using KeyValues = std::map<std::string, std::string>;

KeyValues key_values(const std::vector<std::string>& toks, std::size_t from, const std::vector<std::string>& allowed,
                     const std::vector<std::string>& required) {
  KeyValues kv;
  for (std::size_t i = from; i < toks.size(); ++i) {
    const auto eq = toks[i].find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + toks[i] + "'");
    const std::string key = toks[i].substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) throw ParseError("unknown key '" + key + "'");
    if (!kv.emplace(key, toks[i].substr(eq + 1)).second) throw ParseError("duplicate key '" + key + "'");
  }
  for (const auto& r : required)
    if (!kv.count(r)) throw ParseError("missing key '" + r + "'");
  return kv;
}

std::vector<std::size_t> parse_counts(const std::string& s, const std::string& what) {
  std::vector<std::size_t> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_count(part, what));
  return out;
}

FamilySpec parse_family(const std::vector<std::string>& toks) {
  if (toks.size() < 2) throw ParseError("family needs a kind");
  const std::string& kind = toks[1];
  if (kind == "z2_power") {
    auto kv = key_values(toks, 2, {"depth"}, {"depth"});
    return {Z2PowerParams{parse_count(kv["depth"], "depth")}};
  }
  if (kind == "block") {
    auto kv = key_values(toks, 2, {"p", "blocks"}, {"p", "blocks"});
    return {BlockParams{parse_int(kv["p"], "p"), parse_counts(kv["blocks"], "blocks")}};
  }
  if (kind == "dense_trivial_sum") {
    auto kv = key_values(toks, 2, {"k", "l", "window"}, {"k", "l", "window"});
    return {DenseParams{parse_group(kv["k"]), parse_count(kv["l"], "l"), parse_count(kv["window"], "window")}};
  }
  if (kind == "torsion_torus") {
    auto kv = key_values(toks, 2, {"n"}, {"n"});
    return {TorsionTorusParams{parse_count(kv["n"], "n")}};
  }
  if (kind == "chain") {
    auto kv = key_values(toks, 2, {"m", "chain", "copies"}, {"m", "chain"});
    ChainParams p;
    p.m = parse_group(kv["m"]);
    p.copies = kv.count("copies") ? parse_count(kv["copies"], "copies") : 1;
    for (const auto& link : split(kv["chain"], ';')) {
      if (link.size() < 2 || link.front() != '[' || link.back() != ']')
        throw ParseError("chain links are written [v,v,...]");
      std::vector<GroupElement> gens;
      const std::string inner = link.substr(1, link.size() - 2);
      if (!inner.empty())
        for (const auto& v : split(inner, ',')) gens.push_back(parse_value(p.m, v));
      p.chain.push_back(span(p.m, gens));
    }
    return {p};
  }
  throw ParseError("unknown family kind '" + kind + "'");
}

}  // namespace

FiniteAbelianGroup parse_group(const std::string& s) {
  std::vector<std::int64_t> orders;
  for (const auto& part : split(s, '+')) {
    if (part.rfind("Z/", 0) != 0) throw ParseError("bad group '" + s + "', expected Z/n+Z/m+...");
    const std::int64_t n = parse_int(part.substr(2), "group order");
    if (n < 1) throw ParseError("group order must be positive in '" + s + "'");
    orders.push_back(n);
  }
  return FiniteAbelianGroup(orders);
}

GroupElement parse_value(const FiniteAbelianGroup& g, const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != g.rank())
    throw ParseError("value '" + s + "' has " + std::to_string(parts.size()) + " components, " + g.to_string() +
                     " needs " + std::to_string(g.rank()));
  std::vector<std::int64_t> c;
  for (const auto& p : parts) c.push_back(parse_int(p, "value"));
  return g.element(c);
}

std::string value_text(const GroupElement& x) {
  std::string s;
  for (std::size_t i = 0; i < x.coords().size(); ++i) s += (i ? ":" : "") + std::to_string(x.coords()[i]);
  return s;
}

InputSpec parse_input(const std::string& text) {
  std::optional<FamilySpec> family;
  SchemaPtr schema;
  std::vector<SeqElement> gens;
  std::optional<TorusSeqSubgroup> torus;
  std::size_t lineno = 0;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto toks = tokens(line);
    if (toks.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    try {
      const std::string& head = toks[0];
      if (head == "schema") {
        if (schema) throw ParseError("schema given twice");
        auto kv = key_values(toks, 1, {"prefix", "tail"}, {"tail"});
        std::vector<FiniteAbelianGroup> prefix;
        if (kv.count("prefix") && !kv["prefix"].empty())
          for (const auto& g : split(kv["prefix"], ',')) prefix.push_back(parse_group(g));
        schema = make_schema(prefix, parse_group(kv["tail"]));
      } else if (head == "gen") {
        if (!schema) throw ParseError("gen before schema");
        auto bar = std::find(toks.begin(), toks.end(), "|");
        if (bar == toks.end() || std::find(bar + 1, toks.end(), "|") != toks.end())
          throw ParseError("gen needs exactly one '|' between prefix and period");
        std::vector<GroupElement> prefix, period;
        for (auto it = toks.begin() + 1; it != bar; ++it)
          prefix.push_back(parse_value(schema->group_at(prefix.size()), *it));
        for (auto it = bar + 1; it != toks.end(); ++it) period.push_back(parse_value(schema->tail, *it));
        gens.emplace_back(schema, std::move(prefix), std::move(period));
      } else if (head == "family") {
        if (family) throw ParseError("family given twice");
        family = parse_family(toks);
      } else if (head == "torus") {
        if (torus) throw ParseError("torus given twice");
        auto kv = key_values(toks, 1, {"y"}, {"y"});
        torus.emplace();
        if (!kv["y"].empty())
          for (const auto& v : split(kv["y"], ',')) torus->y.push_back(QZ::parse(v));
      } else if (head == "qgen") {
        if (!torus) throw ParseError("qgen before torus");
        if (toks.size() < 4) throw ParseError("qgen needs a tag, values, '|' and a tail value");
        auto bar = std::find(toks.begin() + 2, toks.end(), "|");
        if (bar == toks.end() || bar + 2 != toks.end()) throw ParseError("qgen needs '|' followed by one tail value");
        QZSequence seq;
        for (auto it = toks.begin() + 2; it != bar; ++it) seq.prefix.push_back(QZ::parse(*it));
        seq.tail = QZ::parse(*(bar + 1));
        torus->gens.push_back({seq, toks[1]});
      } else {
        throw ParseError("unknown directive '" + head + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    } catch (const Error& e) {
      throw ParseError(where + e.what());
    }
  }
  const int kinds = (schema ? 1 : 0) + (family ? 1 : 0) + (torus ? 1 : 0);
  if (kinds != 1) throw ParseError("input must contain exactly one of: schema with gens, family, torus");
  if (family) return *family;
  if (torus) return *torus;
  return ProductSubgroup(schema, std::move(gens));
}

std::string to_text(const ProductSubgroup& h) {
  std::ostringstream os;
  const CoordSchema& s = h.schema();
  os << "schema";
  if (!s.prefix.empty()) {
    os << " prefix=";
    for (std::size_t i = 0; i < s.prefix.size(); ++i) os << (i ? "," : "") << s.prefix[i].to_string();
  }
  os << " tail=" << s.tail.to_string() << "\n";
  for (const auto& g : h.gens()) {
    os << "gen";
    for (const auto& v : g.prefix()) os << " " << value_text(v);
    os << " |";
    for (const auto& v : g.period()) os << " " << value_text(v);
    os << "\n";
  }
  return os.str();
}

std::string to_text(const FamilySpec& spec) {
  std::ostringstream os;
  os << "family " << to_string(spec.kind());
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ChainParams>) {
          os << " m=" << p.m.to_string() << " chain=";
          for (std::size_t i = 0; i < p.chain.size(); ++i) {
            os << (i ? ";" : "") << "[";
            auto gens = p.chain[i].generators();
            for (std::size_t j = 0; j < gens.size(); ++j) os << (j ? "," : "") << value_text(gens[j]);
            os << "]";
          }
          if (p.copies != 1) os << " copies=" << p.copies;
        } else if constexpr (std::is_same_v<T, BlockParams>) {
          os << " p=" << p.p << " blocks=";
          for (std::size_t i = 0; i < p.blocks.size(); ++i) os << (i ? "," : "") << p.blocks[i];
        } else if constexpr (std::is_same_v<T, DenseParams>) {
          os << " k=" << p.k_group.to_string() << " l=" << p.l << " window=" << p.window;
        } else if constexpr (std::is_same_v<T, Z2PowerParams>) {
          os << " depth=" << p.depth;
        } else {
          os << " n=" << p.n;
        }
      },
      spec.params);
  os << "\n";
  return os.str();
}

std::string to_text(const TorusSeqSubgroup& h) {
  std::ostringstream os;
  os << "torus y=";
  for (std::size_t i = 0; i < h.y.size(); ++i) os << (i ? "," : "") << h.y[i].to_string();
  os << "\n";
  for (const auto& g : h.gens) {
    os << "qgen " << g.tag;
    for (const auto& v : g.seq.prefix) os << " " << v.to_string();
    os << " | " << g.seq.tail.to_string() << "\n";
  }
  return os.str();
}

}  // namespace groupctl
