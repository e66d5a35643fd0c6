#include "fkit/composition.hpp"

namespace fkit {

namespace {
constexpr std::pair<AlgebraTag, std::string_view> kTagNames[] = {
    {AlgebraTag::unarion, "unarion"},
    {AlgebraTag::binarion_split, "binarion-split"},
    {AlgebraTag::binarion_quadratic, "binarion-quadratic"},
    {AlgebraTag::quaternion, "quaternion"},
    {AlgebraTag::matrix2x2, "matrix2x2"},
    {AlgebraTag::octonion, "octonion"},
    {AlgebraTag::octonion_split, "octonion-split"},
};
}  // namespace

std::string_view to_string(AlgebraTag tag) {
  for (const auto& [t, name] : kTagNames)
    if (t == tag) return name;
  return "?";
}

AlgebraTag parse_algebra_tag(std::string_view name) {
  for (const auto& [t, n] : kTagNames)
    if (n == name) return t;
  std::string alt(name);
  for (char& c : alt)
    if (c == '_') c = '-';
  for (const auto& [t, n] : kTagNames)
    if (n == alt) return t;
  throw ParseError("unknown algebra tag '" + std::string(name) + "'");
}

int parameter_count(AlgebraTag tag) {
  switch (tag) {
    case AlgebraTag::binarion_quadratic:
      return 1;
    case AlgebraTag::quaternion:
      return 2;
    case AlgebraTag::octonion:
      return 3;
    default:
      return 0;
  }
}

}  // namespace fkit
