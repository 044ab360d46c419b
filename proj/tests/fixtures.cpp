#include "fixtures.hpp"

#include <stdexcept>

namespace fixtures {

using namespace sictower;

namespace {

Fiducial find_or_throw(std::int64_t d, FindOptions opts) {
  FindResult r = find_fiducial(d, opts);
  if (!r.converged)
    throw std::runtime_error("fixture search failed for d = " +
                             std::to_string(d));
  return r.fiducial;
}

}  // namespace

const Fiducial& small5() {
  static Fiducial f = [] {
    FindOptions o;
    o.restarts = 64;
    o.rng_seed = 3;
    o.restrict_zauner = true;
    return find_or_throw(5, o);
  }();
  return f;
}

const Fiducial& small7() {
  static Fiducial f = [] {
    FindOptions o;
    o.restarts = 64;
    o.rng_seed = 5;
    o.restrict_zauner = true;
    return find_or_throw(7, o);
  }();
  return f;
}

const Fiducial& small4() {
  static Fiducial f = [] {
    FindOptions o;
    o.restarts = 64;
    o.rng_seed = 1;
    return find_or_throw(4, o);
  }();
  return f;
}

Mat joint_basis15() {
  CrtSplit split(5, 3);
  Mat V = crt_permutation(split);
  Mat Ub = V.adjoint() * kron(Mat::Identity(5, 5), parity(3)) * V;
  Mat B = zauner_project(15)[0].basis;
  Eigen::SelfAdjointEigenSolver<Mat> es(B.adjoint() * Ub * B);
  std::vector<int> keep;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
  Mat J(15, keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    J.col(i) = B * es.eigenvectors().col(keep[i]);
  return J;
}

const Fiducial& big15() {
  static Fiducial f = [] {
    FindOptions o;
    o.restarts = 200;
    o.rng_seed = 11;
    o.tolerance = 1e-10;
    o.basis = joint_basis15();
    return find_or_throw(15, o);
  }();
  return f;
}

const Fiducial& big8() {
  static Fiducial f = [] {
    FindOptions o;
    o.restarts = 400;
    o.rng_seed = 1;
    Complex pin(-1.0 / 3.0, 0.0);
    o.target_overlaps = {{DisplacementIndex(0, 4, 8), pin},
                         {DisplacementIndex(4, 0, 8), pin},
                         {DisplacementIndex(4, 4, 8), pin}};
    return find_or_throw(8, o);
  }();
  return f;
}

const AlignmentReport& aligned15() {
  static AlignmentReport rep = align(small5(), big15(), 1e-8);
  return rep;
}

const AlignmentReport& aligned8() {
  static AlignmentReport rep = align(small4(), big8(), 1e-8);
  return rep;
}

const OverlapTable& theta5() {
  static OverlapTable t = overlap_table(aligned15().small_choice);
  return t;
}

}  // namespace fixtures
