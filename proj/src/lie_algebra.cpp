#include "bvjet/lie_algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace bvjet {

LieAlgebraSpec::LieAlgebraSpec(int dim, std::vector<Rational> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ < 1) throw std::invalid_argument("algebra dimension must be positive");
  if (entries_.size() != static_cast<size_t>(dim_) * dim_ * dim_)
    throw std::invalid_argument("structure-constant tensor has the wrong size");
  validate();
}

void LieAlgebraSpec::validate() const {
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int c = 0; c < dim_; ++c)
        if (f(a, b, c) != -f(a, c, b))
          throw std::invalid_argument("structure constants are not antisymmetric");
  // Jacobi: f^a_{be} f^e_{cd} + f^a_{ce} f^e_{db} + f^a_{de} f^e_{bc} = 0
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int c = 0; c < dim_; ++c)
        for (int d = 0; d < dim_; ++d) {
          Rational s = 0;
          for (int e = 0; e < dim_; ++e)
            s += f(a, b, e) * f(e, c, d) + f(a, c, e) * f(e, d, b) + f(a, d, e) * f(e, b, c);
          if (s != 0) throw std::invalid_argument("structure constants violate the Jacobi identity");
        }
}

Rational LieAlgebraSpec::trace(int c) const {
  Rational s = 0;
  for (int a = 0; a < dim_; ++a) s += f(a, a, c);
  return s;
}

LieAlgebraSpec LieAlgebraSpec::abelian(int dim) {
  return LieAlgebraSpec(dim, std::vector<Rational>(static_cast<size_t>(dim) * dim * dim, 0));
}

LieAlgebraSpec LieAlgebraSpec::su2() {
  std::vector<Rational> e(27, 0);
  auto set = [&](int a, int b, int c, int v) { e[static_cast<size_t>((a * 3 + b) * 3 + c)] = v; };
  // f^a_{bc} = epsilon_{abc}
  set(0, 1, 2, 1);
  set(0, 2, 1, -1);
  set(1, 2, 0, 1);
  set(1, 0, 2, -1);
  set(2, 0, 1, 1);
  set(2, 1, 0, -1);
  return LieAlgebraSpec(3, std::move(e));
}

LieAlgebraSpec LieAlgebraSpec::parse(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  int dim = -1;
  struct Entry {
    int a, b, c;
    Rational v;
  };
  std::vector<Entry> entries;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream ls(line);
    if (!(ls >> word)) continue;
    if (word.starts_with("#")) continue;
    if (word == "dim") {
      if (!(ls >> dim)) throw std::invalid_argument("algebra file: bad dim line");
    } else if (word == "f") {
      Entry e{};
      std::string value;
      if (!(ls >> e.a >> e.b >> e.c >> value))
        throw std::invalid_argument("algebra file: bad f line " + std::to_string(lineNo));
      auto slash = value.find('/');
      if (slash == std::string::npos)
        e.v = Rational(Integer(value));
      else
        e.v = Rational(Integer(value.substr(0, slash)), Integer(value.substr(slash + 1)));
      entries.push_back(e);
    } else {
      throw std::invalid_argument("algebra file: unknown directive '" + word + "'");
    }
  }
  if (dim < 1) throw std::invalid_argument("algebra file: missing dim");
  std::vector<Rational> tensor(static_cast<size_t>(dim) * dim * dim, 0);
  for (const auto& e : entries) {
    if (e.a < 1 || e.a > dim || e.b < 1 || e.b > dim || e.c < 1 || e.c > dim)
      throw std::invalid_argument("algebra file: index out of range");
    tensor[static_cast<size_t>(((e.a - 1) * dim + (e.b - 1)) * dim + (e.c - 1))] = e.v;
    tensor[static_cast<size_t>(((e.a - 1) * dim + (e.c - 1)) * dim + (e.b - 1))] = -e.v;
  }
  return LieAlgebraSpec(dim, std::move(tensor));
}

LieAlgebraSpec LieAlgebraSpec::preset(const std::string& name) {
  if (name == "su2") return su2();
  if (name.starts_with("abelian")) {
    int d = 1;
    if (name.size() > 7) d = std::stoi(name.substr(7));
    return abelian(d);
  }
  throw std::invalid_argument("unknown algebra preset '" + name + "'");
}

}  // namespace bvjet
