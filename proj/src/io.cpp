#include "fkit/io.hpp"

#include <iomanip>
#include <sstream>

namespace fkit {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::uint32_t parse_u32(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(s, &used);
    if (used != s.size() || v > 0xffffffffUL) throw std::invalid_argument(s);
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + s + "' in " + context);
  }
}

std::uint32_t json_u32(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("field descriptor lacks \"") + key + "\"");
  const json& v = j.at(key);
  if (v.is_number_unsigned() || v.is_number_integer()) {
    long long n = v.get<long long>();
    if (n < 0 || n > 0xffffffffLL) throw ParseError("field parameter out of range");
    return static_cast<std::uint32_t>(n);
  }
  if (v.is_string()) return parse_u32(v.get<std::string>(), "field descriptor");
  throw ParseError(std::string("field descriptor \"") + key + "\" must be an integer");
}

}  // namespace

FieldDescriptor parse_field_spec(const std::string& text) {
  auto parts = split(text, ':');
  if (parts[0] == "Q" && parts.size() == 1) return FieldDescriptor::rationals();
  if (parts[0] == "Fp" && parts.size() == 2) return FieldDescriptor::prime(parse_u32(parts[1], text));
  if (parts[0] == "Fp2" && parts.size() == 3)
    return FieldDescriptor::quadratic_ext(parse_u32(parts[1], text), parse_u32(parts[2], text));
  throw ParseError("field must be Q, Fp:<p> or Fp2:<p>:<eps>, got '" + text + "'");
}

std::string field_spec(const FieldDescriptor& f) {
  switch (f.kind) {
    case FieldDescriptor::Kind::rationals: return "Q";
    case FieldDescriptor::Kind::prime: return "Fp:" + std::to_string(f.p);
    default: return "Fp2:" + std::to_string(f.p) + ":" + std::to_string(f.eps);
  }
}

json field_to_json(const FieldDescriptor& f) {
  switch (f.kind) {
    case FieldDescriptor::Kind::rationals: return {{"field", "Q"}};
    case FieldDescriptor::Kind::prime: return {{"field", "Fp"}, {"p", f.p}};
    default: return {{"field", "Fp2"}, {"p", f.p}, {"eps", f.eps}};
  }
}

FieldDescriptor field_from_json(const json& j) {
  if (j.is_string()) return parse_field_spec(j.get<std::string>());
  if (!j.is_object() || !j.contains("field") || !j.at("field").is_string())
    throw ParseError("field descriptor must be {\"field\": \"Q\" | \"Fp\" | \"Fp2\", ...}");
  const std::string kind = j.at("field").get<std::string>();
  if (kind == "Q") return FieldDescriptor::rationals();
  if (kind == "Fp") return FieldDescriptor::prime(json_u32(j, "p"));
  if (kind == "Fp2") return FieldDescriptor::quadratic_ext(json_u32(j, "p"), json_u32(j, "eps"));
  throw ParseError("unknown field kind '" + kind + "'");
}

const std::vector<std::string>& parameter_names(AlgebraTag tag) {
  static const std::vector<std::string> none, eps{"eps"}, ab{"a", "b"}, abc{"a", "b", "c"};
  switch (tag) {
    case AlgebraTag::binarion_quadratic: return eps;
    case AlgebraTag::quaternion: return ab;
    case AlgebraTag::octonion: return abc;
    default: return none;
  }
}

AlgebraSpec parse_algebra_spec(const std::string& text) {
  AlgebraSpec s;
  auto colon = text.find(':');
  s.tag = parse_algebra_tag(text.substr(0, colon));
  if (colon != std::string::npos) {
    s.params = split(text.substr(colon + 1), ',');
    for (const auto& p : s.params)
      if (p.empty()) throw ParseError("empty algebra parameter in '" + text + "'");
    if (static_cast<int>(s.params.size()) != parameter_count(s.tag))
      throw ParseError(std::string(to_string(s.tag)) + " takes " + std::to_string(parameter_count(s.tag)) +
                       " parameters");
  }
  return s;
}

std::string algebra_spec(const AlgebraSpec& s) {
  std::string out(to_string(s.tag));
  for (std::size_t i = 0; i < s.params.size(); ++i) out += (i == 0 ? ":" : ",") + s.params[i];
  return out;
}

AlgebraSpec algebra_spec_from_json(const json& j, FieldDescriptor* field) {
  if (j.is_string()) return parse_algebra_spec(j.get<std::string>());
  if (!j.is_object() || !j.contains("tag")) throw ParseError("algebra must be {\"tag\": ..., ...}");
  AlgebraSpec s;
  s.tag = parse_algebra_tag(j.at("tag").get<std::string>());
  const auto& names = parameter_names(s.tag);
  bool any = false;
  for (const auto& n : names) any = any || j.contains(n);
  if (any) {
    for (const auto& n : names) {
      if (!j.contains(n)) throw ParseError("algebra " + std::string(to_string(s.tag)) + " lacks parameter " + n);
      const json& v = j.at(n);
      if (v.is_string()) {
        s.params.push_back(v.get<std::string>());
      } else if (v.is_number_integer()) {
        s.params.push_back(std::to_string(v.get<long long>()));
      } else {
        throw ParseError("algebra parameter " + n + " must be a string or integer");
      }
    }
  }
  if (field && j.contains("field")) *field = field_from_json(j.at("field"));
  return s;
}

json census_to_json(const CensusReport& r) {
  json counts = json::object();
  for (auto [rank, n] : r.counts) counts[std::to_string(rank)] = n;
  json j{{"space", r.space},   {"algebra", r.algebra}, {"field", field_to_json(r.field)},
         {"mode", to_string(r.mode)}, {"counts", counts}, {"total", r.total}};
  if (r.mode == CensusMode::sampled) {
    j["samples"] = r.samples;
    j["seed"] = r.seed;
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << r.checksum;
  j["checksum"] = hex.str();
  j["seconds"] = r.seconds;
  return j;
}

std::string census_to_csv(const CensusReport& r) {
  std::ostringstream os;
  os << "space,algebra,field,mode,rank,count,total,checksum,seconds\n";
  for (auto [rank, n] : r.counts) {
    os << r.space << ',' << r.algebra << ',' << field_spec(r.field) << ',' << to_string(r.mode) << ',' << rank << ','
       << n << ',' << r.total << ',' << std::hex << std::setw(16) << std::setfill('0') << r.checksum << std::dec
       << std::setfill(' ') << ',' << r.seconds << '\n';
  }
  return os.str();
}

}  // namespace fkit
