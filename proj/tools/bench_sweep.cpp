// Times the theta sweep with row-parallel evaluation against the serial
// reference and checks that both produce identical CSV bytes.

#include <chrono>
#include <iostream>
#include <string>

#include "homsym/chmodel.hpp"
#include "homsym/numlab.hpp"
#include "homsym/rational.hpp"

using namespace homsym;

namespace {

template <typename F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int denom = 10000;  // step 1/denom over [0, 0.999]
  if (argc > 1) denom = std::stoi(argv[1]);

  num::EvalPoint p;
  p.x = Rational(1);
  p.t = Rational(1, 10);
  p.eps = Rational(1, 100);

  const Rational lo(0), hi(999, 1000), step(1, denom);
  num::Sweep serial, parallel;
  double ts = timed([&] {
    serial = num::sweep(ch::Case::LinearU, p, lo, hi, step, num::SolutionForm::Reported, false);
  });
  double tp = timed([&] {
    parallel = num::sweep(ch::Case::LinearU, p, lo, hi, step, num::SolutionForm::Reported, true);
  });

  const auto rows = serial.rows.size();
  std::cout << "rows: " << rows << "\n";
  std::cout << "serial:   " << ts << " s  (" << static_cast<double>(rows) / ts << " rows/s)\n";
  std::cout << "parallel: " << tp << " s  (" << static_cast<double>(rows) / tp << " rows/s)\n";
  std::cout << "speedup:  " << ts / tp << "x\n";

  if (num::to_csv(serial) != num::to_csv(parallel)) {
    std::cout << "MISMATCH: serial and parallel CSV differ\n";
    return 1;
  }
  std::cout << "serial and parallel CSV are byte-identical\n";
  return 0;
}
