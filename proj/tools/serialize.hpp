#pragma once

// JSON forms of the library's data. Readers throw InputError on malformed
// documents.

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "klein/groups.hpp"

namespace klein::io {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const Int& x);
Int int_from_json(const json& j);

/// {"rows": r, "cols": c, "data": [[...]]}
json to_json(const IntMatrix& m);
json to_json(const F2Matrix& m);
IntMatrix int_matrix_from_json(const json& j);
F2Matrix f2_matrix_from_json(const json& j);

/// {"rank": r, "a": matrix, "b": matrix}
json to_json(const KLattice& M);
KLattice lattice_from_json(const json& j);

/// [d_dot, d_pp, d_pm, d_mp, d_mm]
json to_json(const DimVector& d);

/// {"dims": [...], "f": {"pp": matrix, "pm": ..., "mp": ..., "mm": ...}}
json to_json(const LambdaRep& V);
LambdaRep rep_from_json(const json& j);

/// {"kind": "hom", "f": [coefficients, lowest first]} or
/// {"kind": "special", "lambda": "0" | "1" | "inf"}; a string such as
/// "special:1" or "hom:t^2+t+1" is accepted too.
json to_json(const TubeId& id);
TubeId tube_id_from_json(const json& j);

/// {"tube": TubeId, "j": j, "m": m}
json to_json(const TubeLabel& l);
TubeLabel label_from_json(const json& j);

/// {"parity": ..., "tubes": [{"tube": TubeId, "seq": [{"j", "m", "k"}]}]}
json to_json(const StandardData& d);
StandardData standard_data_from_json(const json& j);

/// {"coords": [...], "divisors": [...]}
json class_json(const CohClass& c, const IntVector& divisors);
json to_json(const CohomologyGroup& H);

/// {"base": KLattice, "level": k}
json to_json(const ColatticeLevel& N);
ColatticeLevel colattice_from_json(const json& j);

json to_json(const GroupPresentation& p);
/// {"isomorphic": bool, "psi": "id" | "t2" | ...}
json to_json(const Classification& c);

json read_file(const std::string& path);

}  // namespace klein::io
