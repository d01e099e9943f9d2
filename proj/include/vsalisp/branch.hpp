#pragma once

#include <string_view>
#include <vector>

namespace vsalisp {

/// Decision points shared by the vector evaluator and the symbolic oracle.
/// Both record the same sequence for the same program, so their logs can be
/// compared entry by entry.
enum class Branch {
  CondTake,
  CondSkip,
  LambdaRelabel,
  LambdaBody,      // parameter list exhausted: the body is the result
  LambdaEmpty,     // body is NIL
  LambdaCurry,     // substitute the first parameter, leave a residual lambda
  SubstNoParams,
  SubstEmpty,
  SubstParam,      // expression is the parameter itself
  SubstAtom,       // any other atom
  SubstHeadParam,  // head of the expression is the parameter
  SubstHeadPair,   // head is itself a pair
  SubstHeadOther,
  FcallDefined,
  FcallData,
  Blend,  // a saturating sum landed between the thresholds
};

std::string_view to_string(Branch b);

using BranchLog = std::vector<Branch>;

}  // namespace vsalisp
