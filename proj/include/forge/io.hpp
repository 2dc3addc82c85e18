#pragma once
#include <memory>
#include <string>
#include <vector>

#include "forge/base_algebra.hpp"
#include "forge/bialgebroid.hpp"
#include "forge/classical.hpp"
#include "forge/dyn_twist.hpp"
#include "forge/hopf.hpp"

namespace forge {

// Reads a whole file; InputError when missing.
std::string read_file(const std::string& path);
// True when the argument names an existing file.
bool is_file(const std::string& path);

// Hopf algebra documents: {"kind":"hopf", "field", "labels", "unit", "mul", "coproduct", "counit", "antipode"}.
std::string hopf_to_json(const Hopf& h);
// Parse errors carry "<source>:<line>:<column>"; missing or malformed fields name their JSON path.
Hopf hopf_from_json(const std::string& text, const std::string& source, int field = 1);

// {"kind":"group", "name", "labels", "table"} -> group algebra (non-group tables raise InputError)
Hopf group_from_json(const std::string& text, const std::string& source);

// {"kind":"rmatrix", "R": [[index, "scalar"], ...]} on the given algebra
Vec rmatrix_from_json(const std::string& text, const std::string& source, const Hopf& h, int field = 1);

// {"kind":"lie_bialgebra", "name", "labels", "brackets": [[i, j, [coords]]], "cobracket": [[[a, b, "w"], ...], ...]}
LieBialgebra lie_bialgebra_from_json(const std::string& text, const std::string& source);
std::string lie_bialgebra_to_json(const LieBialgebra& b);

// {"kind":"function_base", "vars": m, "derivations": [[expr per variable], ...]}
RationalBase function_base_from_json(const std::string& text, const std::string& source);

struct CdybeInstance {
  std::string name;
  ClassicalSetup setup;
  RationalBase base;
  Multivector<RatFunc> r;
};
// {"kind":"cdybe", "g": "sl2", "h": lie bialgebra name or document, "incl": [[...]], "base": name or document,
//  "r": {"e^f": "expr"}}
CdybeInstance cdybe_from_json(const std::string& text, const std::string& source);

// {"kind":"bialgebroid", "name", "B": algebra, "L": algebra, "s", "t", "cop", "eps": column lists}
std::string bialgebroid_to_json(const Bialgebroid& b);
Bialgebroid bialgebroid_from_json(const std::string& text, const std::string& source, int field = 1);

// {"kind":"dynamical_cocycle", "hopf": name, "R": vec, "base": base name, "F": vec}; U = H, the base
// coaction is replaced by the L- coaction of R.
struct CocycleInstance {
  QT qt;
  DynamicalCocycle dc;
  BasePtr base;  // the named base (action used for L+ and L-)
};
CocycleInstance cocycle_from_json(const std::string& text, const std::string& source, int field = 0);
std::string cocycle_to_json(const std::string& hopf, const std::string& base, const Vec& R, const Vec& F);

struct CatalogEntry {
  std::string name, kind, description;
};
std::vector<CatalogEntry> catalog();

// group:Z2|Z2, group:Z3, group:S3, sweedler, taft:n, dual(X), double(X) or a hopf/group JSON file
HopfPtr resolve_hopf(const std::string& name, int field = 0);
// base:adjZ2|adjZ2, base:adjZ3, base:adjS3, base(X) for the adjoint base of a hopf name, base:funZ2
// (functions on Z2, trivial action and coaction)
BasePtr resolve_base(const std::string& name, int field = 0);
// sl2, borel-sl2 or a lie_bialgebra file (sl2 carries the zero cobracket)
LieBialgebra resolve_lie_bialgebra(const std::string& name);
// fnbase:rational:1 or a function_base file
RationalBase resolve_function_base(const std::string& name);
// sl2-cartan, sl2-cartan-perturbed or a cdybe file
CdybeInstance resolve_cdybe(const std::string& name);

// Catalog R-matrices for a resolved name: 1(x)1 on group algebras, Theta on double(X),
// sweedler_r at three parameters on sweedler; empty otherwise.
std::vector<std::pair<std::string, Vec>> catalog_r_matrices(const std::string& name, int field = 0);

}  // namespace forge
