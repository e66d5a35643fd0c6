#pragma once

// JSON and command-line text forms for descriptors, elements, words and
// reports. Scalars are always written as strings; readers also take integers.

#include <json.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "fkit/census.hpp"
#include "fkit/fibers.hpp"
#include "fkit/quadform.hpp"

namespace fkit {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Descriptors

/// "Q", "Fp:5", "Fp2:5:2"
FieldDescriptor parse_field_spec(const std::string& text);
std::string field_spec(const FieldDescriptor& f);

json field_to_json(const FieldDescriptor& f);
FieldDescriptor field_from_json(const json& j);

/// Algebra tag plus parameters as text; parameters are read in the field later.
struct AlgebraSpec {
  AlgebraTag tag = AlgebraTag::unarion;
  std::vector<std::string> params;  // empty: defaults
};

/// "quaternion:1,1", "octonion-split", "binarion-quadratic:2"
AlgebraSpec parse_algebra_spec(const std::string& text);
std::string algebra_spec(const AlgebraSpec& s);

/// {"tag": ..., "a": ..., "b": ..., "field": {...}}; the field is returned
/// through `field` when present.
AlgebraSpec algebra_spec_from_json(const json& j, FieldDescriptor* field);

/// Parameter names in JSON: eps; a, b; a, b, c.
const std::vector<std::string>& parameter_names(AlgebraTag tag);

// ---------------------------------------------------------------------------
// Scalars and algebras

template <class S>
json scalar_to_json(const S& x) {
  return to_string(x);
}

template <class S>
S scalar_from_json(const json& j, const FieldDescriptor& f) {
  if (j.is_number_integer()) return from_int<S>(f, j.get<long long>());
  if (j.is_string()) return FieldTraits<S>::parse(f, j.get<std::string>());
  throw ParseError("expected a scalar (string or integer), got " + j.dump());
}

/// Parameters used when a spec gives none: a nonsquare for the quadratic
/// binarion, -1 for every quaternion/octonion parameter.
template <class S>
std::vector<S> default_params(AlgebraTag tag, const FieldDescriptor& f) {
  const S minus_one = from_int<S>(f, -1);
  switch (tag) {
    case AlgebraTag::binarion_quadratic: {
      if (!f.finite()) return {minus_one};
      for (const S& x : enumerate<S>(f))
        if (!is_square(x)) return {x};
      throw DomainError("no nonsquare in " + f.name());
    }
    case AlgebraTag::quaternion: return {minus_one, minus_one};
    case AlgebraTag::octonion: return {minus_one, minus_one, minus_one};
    default: return {};
  }
}

template <class S>
typename CompositionAlgebra<S>::Ptr build_algebra(const AlgebraSpec& spec, const FieldDescriptor& f) {
  check_kind<S>(f);
  std::vector<S> params;
  if (spec.params.empty()) {
    params = default_params<S>(spec.tag, f);
  } else {
    if (static_cast<int>(spec.params.size()) != parameter_count(spec.tag))
      throw ParseError(std::string(to_string(spec.tag)) + " takes " + std::to_string(parameter_count(spec.tag)) +
                       " parameters");
    for (const auto& p : spec.params) params.push_back(FieldTraits<S>::parse(f, p));
  }
  return CompositionAlgebra<S>::construct(spec.tag, params, f);
}

template <class S>
json algebra_to_json(const CompositionAlgebra<S>& alg) {
  json j;
  j["tag"] = std::string(to_string(alg.tag()));
  const auto& names = parameter_names(alg.tag());
  for (std::size_t i = 0; i < names.size() && i < alg.params().size(); ++i)
    j[names[i]] = scalar_to_json(alg.params()[i]);
  j["field"] = field_to_json(alg.field());
  return j;
}

template <class S>
json coords_to_json(const Coords<S>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(scalar_to_json(v[i]));
  return a;
}

template <class S>
Coords<S> coords_from_json(const json& j, const CompositionAlgebra<S>& alg) {
  // a bare scalar k stands for k e
  if (!j.is_array()) return scalar_from_json<S>(j, alg.field()) * alg.one().v;
  if (!j.is_array() || static_cast<int>(j.size()) != alg.dim())
    throw ParseError("expected " + std::to_string(alg.dim()) + " coordinates, got " + j.dump());
  Coords<S> v(alg.dim());
  for (int i = 0; i < alg.dim(); ++i) v[i] = scalar_from_json<S>(j[i], alg.field());
  return v;
}

template <class S>
json comp_to_json(const CompElem<S>& x) {
  return {{"algebra", algebra_to_json(*x.alg)}, {"coords", coords_to_json(x.v)}};
}

/// Accepts a bare coordinate array or {"coords": [...]}.
template <class S>
CompElem<S> comp_from_json(const json& j, const CompositionAlgebra<S>& alg) {
  const json& c = j.is_object() ? j.at("coords") : j;
  return alg.element(coords_from_json(c, alg));
}

// ---------------------------------------------------------------------------
// Jordan and Freudenthal elements

template <class S>
json jordan_to_json(const JordanElem<S>& X) {
  json c = json::array(), x = json::array();
  for (int i = 0; i < 3; ++i) {
    c.push_back(scalar_to_json(X.c[i]));
    x.push_back(coords_to_json(X.x[i]));
  }
  return {{"c", c}, {"x", x}};
}

namespace detail {
inline void only_keys(const json& j, std::initializer_list<const char*> keys, const char* what) {
  for (const auto& [k, v] : j.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* n) { return k == n; }))
      throw ParseError(std::string("unexpected key '") + k + "' in " + what);
}
}  // namespace detail

/// Missing "c" or "x" means zero.
template <class S>
JordanElem<S> jordan_from_json(const json& j, const CompositionAlgebra<S>& alg) {
  if (!j.is_object()) throw ParseError("expected a Jordan element {\"c\": [...], \"x\": [...]}");
  detail::only_keys(j, {"c", "x"}, "a Jordan element");
  JordanElem<S> X = jordan_zero(alg);
  if (j.contains("c")) {
    const json& c = j.at("c");
    if (!c.is_array() || c.size() != 3) throw ParseError("Jordan element needs three diagonal scalars");
    for (int i = 0; i < 3; ++i) X.c[i] = scalar_from_json<S>(c[i], alg.field());
  }
  if (j.contains("x")) {
    const json& x = j.at("x");
    if (!x.is_array() || x.size() != 3) throw ParseError("Jordan element needs three off-diagonal entries");
    for (int i = 0; i < 3; ++i) X.x[i] = comp_from_json(x[i], alg).v;
  }
  return X;
}

template <class S>
json w_to_json(const WElem<S>& v) {
  return {{"a", scalar_to_json(v.a)}, {"b", jordan_to_json(v.b)}, {"c", jordan_to_json(v.c)}, {"d", scalar_to_json(v.d)}};
}

/// Missing components are zero.
template <class S>
WElem<S> w_from_json(const json& j, const CompositionAlgebra<S>& alg) {
  if (!j.is_object()) throw ParseError("expected {\"a\", \"b\", \"c\", \"d\"}");
  detail::only_keys(j, {"a", "b", "c", "d"}, "an element of W");
  const auto& f = alg.field();
  WElem<S> v = w_zero(alg);
  if (j.contains("a")) v.a = scalar_from_json<S>(j.at("a"), f);
  if (j.contains("b")) v.b = jordan_from_json(j.at("b"), alg);
  if (j.contains("c")) v.c = jordan_from_json(j.at("c"), alg);
  if (j.contains("d")) v.d = scalar_from_json<S>(j.at("d"), f);
  return v;
}

template <class S, int R, int C>
json matrix_to_json(const Eigen::Matrix<S, R, C, 0, R, C>& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(scalar_to_json(m(i, k)));
    a.push_back(row);
  }
  return a;
}

template <class S>
MatX<S> matrix_from_json(const json& j, const FieldDescriptor& f, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw ParseError("expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  MatX<S> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = scalar_from_json<S>(row[static_cast<std::size_t>(k)], f);
  }
  return m;
}

template <class S>
json form_to_json(const TernaryForm<S>& form) {
  return matrix_to_json<S, 3, 3>(form.gram);
}

template <class S>
TernaryForm<S> form_from_json(const json& j, const FieldDescriptor& f) {
  TernaryForm<S> t{Mat3<S>(matrix_from_json<S>(j, f, 3, 3))};
  if (!t.is_symmetric()) throw DomainError("Gram matrix must be symmetric");
  return t;
}

/// A fiber target in W_F. Either a full element {"a","b","c","d"} or the
/// shorthand {"c": 3x3 symmetric matrix, "d": scalar} for (1, 0, c, d).
template <class S>
WElem<S> target_from_json(const json& j, const CompositionAlgebra<S>& scalars) {
  if (j.is_object() && !j.contains("a") && j.contains("c") && j.at("c").is_array()) {
    auto c = form_from_json<S>(j.at("c"), scalars.field()).gram;
    return fiber_target(scalars, c, scalar_from_json<S>(j.at("d"), scalars.field()));
  }
  return w_from_json(j, scalars);
}

template <class S>
json triple_to_json(const Triple<S>& x) {
  return json::array({coords_to_json(x[0].v), coords_to_json(x[1].v), coords_to_json(x[2].v)});
}

template <class S>
Triple<S> triple_from_json(const json& j, const CompositionAlgebra<S>& alg) {
  if (!j.is_array() || j.size() != 3) throw ParseError("a triple is an array of three algebra elements");
  return {comp_from_json(j[0], alg), comp_from_json(j[1], alg), comp_from_json(j[2], alg)};
}

// ---------------------------------------------------------------------------
// Generator words: arrays of {"atom": name, ...}

template <class S>
json atom_to_json(const Atom<S>& a) {
  using K = typename Atom<S>::Kind;
  switch (a.kind) {
    case K::n: return {{"atom", "n"}, {"x", jordan_to_json(*a.x)}};
    case K::nbar: return {{"atom", "nbar"}, {"x", jordan_to_json(*a.x)}};
    case K::s: return {{"atom", "s"}, {"lambda", scalar_to_json(a.lambda)}};
    case K::sstar: return {{"atom", "sstar"}, {"lambda", scalar_to_json(a.lambda)}};
    case K::involution: return {{"atom", "involution"}};
    default: {
      json g = json::array();
      const auto& G = a.levi->g();
      for (Eigen::Index i = 0; i < G.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < G.cols(); ++k) row.push_back(scalar_to_json(G(i, k)));
        g.push_back(row);
      }
      return {{"atom", "levi"}, {"g", g}, {"h", matrix_to_json<S, 3, 3>(a.levi->h())}};
    }
  }
}

/// Levi atoms take "g" (dim x dim, columns are images of basis vectors;
/// identity if absent) and "h" (3x3, identity if absent).
template <class S>
Atom<S> atom_from_json(const json& j, const CompositionAlgebra<S>& alg) {
  if (!j.is_object() || !j.contains("atom")) throw ParseError("an atom is {\"atom\": name, ...}");
  const std::string name = j.at("atom").get<std::string>();
  const auto& f = alg.field();
  if (name == "n") return Atom<S>::n(jordan_from_json(j.at("x"), alg));
  if (name == "nbar") return Atom<S>::nbar(jordan_from_json(j.at("x"), alg));
  if (name == "s") return Atom<S>::s(scalar_from_json<S>(j.at("lambda"), f));
  if (name == "sstar") return Atom<S>::sstar(scalar_from_json<S>(j.at("lambda"), f));
  if (name == "involution") return Atom<S>::involution();
  if (name == "levi") {
    AlgMatrix<S> g = alg.identity_map();
    if (j.contains("g")) g = AlgMatrix<S>(matrix_from_json<S>(j.at("g"), f, alg.dim(), alg.dim()));
    Mat3<S> h = Mat3<S>::Identity() * alg.one_scalar();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        if (r != c) h(r, c) = alg.zero_scalar();
    if (j.contains("h")) h = Mat3<S>(matrix_from_json<S>(j.at("h"), f, 3, 3));
    return Atom<S>::make_levi(Levi<S>(alg, g, h));
  }
  throw ParseError("unknown atom '" + name + "'");
}

template <class S>
json word_to_json(const Word<S>& w) {
  json a = json::array();
  for (const auto& atom : w) a.push_back(atom_to_json(atom));
  return a;
}

template <class S>
Word<S> word_from_json(const json& j, const CompositionAlgebra<S>& alg) {
  if (!j.is_array()) throw ParseError("a word is an array of atoms");
  Word<S> w;
  for (const auto& a : j) w.push_back(atom_from_json(a, alg));
  return w;
}

// ---------------------------------------------------------------------------
// Reports

template <class S>
json fiber_report_to_json(const WElem<S>& xi, const FiberReport<S>& r) {
  json j{{"xi", w_to_json(xi)}, {"status", to_string(r.status)}};
  j["witness"] = r.witness ? triple_to_json(*r.witness) : json::array();
  if (r.cardinality) j["cardinality"] = *r.cardinality;
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

json census_to_json(const CensusReport& r);
/// One row per stratum: space,algebra,field,mode,rank,count,total,checksum,seconds
std::string census_to_csv(const CensusReport& r);

}  // namespace fkit
