#pragma once

#include "sictower/alignment.hpp"

namespace fixtures {

// All fixtures are computed once and cached for the whole test run.

// Zauner-restricted optimizer fiducials.
const sictower::Fiducial& small5();
const sictower::Fiducial& small7();
const sictower::Fiducial& small4();  // unrestricted (even dimension)

// Dimension-15 fiducial from the doubly restricted search (largest Zauner
// subspace intersected with the +1 eigenspace of the extra order-2 symmetry),
// which isolates the orbit aligned to the dimension-5 SICs.
const sictower::Fiducial& big15();

// Dimension-8 fiducial steered onto the orbit aligned to dimension 4 by
// pinning the three stride-4 overlaps to -1/3.
const sictower::Fiducial& big8();

const sictower::AlignmentReport& aligned15();
const sictower::AlignmentReport& aligned8();

// Overlap phase table of the aligned small fiducial choice.
const sictower::OverlapTable& theta5();

// The search basis used by big15 (columns orthonormal in C^15).
sictower::Mat joint_basis15();

}  // namespace fixtures
