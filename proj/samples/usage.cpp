// Walk-through of the main operations; exits non-zero if any claim fails.

#include <iostream>

#include "kron/kron.hpp"

using namespace kron;

int main() {
  const Field q = Field::rational();
  const Matrix a = Matrix::from_rows(q, {{1, 2}, {3, 4}});
  const Matrix b = Matrix::from_rows(q, {{0, 5}, {6, 7}});
  int bad = 0;
  auto claim = [&](bool ok, const char* what) {
    std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
    bad += ok ? 0 : 1;
  };

  claim(kron_quotient(kron_product(a, b), b) == a, "(A (x) B) (/) B = A");
  claim(induced_difference(kron_sum(a, b), b) == a, "(A (+) B) (-) B = A");

  // normalized canonical difference with a random gamma, tr_2(gamma) = 0
  Rng rng(42);
  const CanonicalDifference cd = CanonicalDifference::build(Matrix::identity(q, 2) * q.from_ratio(1, 2),
                                                            random_traceless_tensor(rng, q, 2, 2, {1}),
                                                            UpsilonMode::normalized_identity);
  claim(cd(kron_sum(a, b), b) == a, "canonical difference satisfies the axiom");
  const Matrix x4 = rng.matrix(q, 4);
  claim(cd.eval(x4, b) == cd.eval_closed(x4, b), "literal and closed routes agree");

  const Matrix y = Matrix::from_rows(q, {{1, 0}, {0, 1}});
  const Matrix x = sylvester_solve(a, b, y);
  claim(b * x + x * a.transpose() == y, "Sylvester solution has zero residual");

  const auto pairs = enumerate_commuting_pairs(Field::prime(3), 3, CommutingKind::trace1_matrices);
  claim(compare_with_forms(pairs, parametric_pairs(Field::prime(3), 3, CommutingKind::trace1_matrices)).agree(),
        "trace-one commuting pairs over GF(3), q = 3, match the listed forms");

  ComplexMatrix z(1, 1);
  z(0, 0) = {Rational(0), Rational(1)};
  claim(mobius_embed(z) == Matrix::from_rows(q, {{0, 1}, {-1, 0}}), "phi(i) = [[0, 1], [-1, 0]]");

  std::cout << matrix_to_json(kron_sum(a, b)).dump() << "\n";
  return bad == 0 ? 0 : 1;
}
