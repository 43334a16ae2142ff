#include "hyper3b/coupling.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <vector>

namespace hyper3b::coupling {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

const BigInt& big_factorial(int n) {
  static std::vector<BigInt> table = {1};
  static std::mutex m;
  std::lock_guard lock(m);
  while ((int)table.size() <= n) table.push_back(table.back() * (int)table.size());
  if (n < 0) throw std::domain_error("big_factorial: negative");
  return table[size_t(n)];
}

// (a+b-c)!(a-b+c)!(-a+b+c)! / (a+b+c+1)!  with doubled-int input
BigRat triangle_delta(int ta, int tb, int tc) {
  return BigRat(big_factorial((ta + tb - tc) / 2) * big_factorial((ta - tb + tc) / 2) *
                    big_factorial((-ta + tb + tc) / 2),
                big_factorial((ta + tb + tc) / 2 + 1));
}

BigInt isqrt_exact(const BigInt& v) {
  BigInt r = boost::multiprecision::sqrt(v);
  if (r * r != v) throw std::logic_error("isqrt_exact: not a perfect square");
  return r;
}

BigRat sqrt_exact(const BigRat& v) {
  if (v < 0) throw std::logic_error("sqrt_exact: negative");
  return BigRat(isqrt_exact(boost::multiprecision::numerator(v)),
                isqrt_exact(boost::multiprecision::denominator(v)));
}

template <typename Key, typename Value>
class MemoTable {
 public:
  template <typename F>
  Value get(const Key& k, F&& compute) {
    {
      std::shared_lock lock(mutex_);
      auto it = table_.find(k);
      if (it != table_.end()) return it->second;
    }
    Value v = compute();
    std::unique_lock lock(mutex_);
    return table_.emplace(k, std::move(v)).first->second;
  }

 private:
  std::map<Key, Value> table_;
  std::shared_mutex mutex_;
};

}  // namespace

double SqrtRational::to_double() const {
  if (is_zero()) return 0.0;
  BigFloat num(boost::multiprecision::numerator(rat));
  BigFloat den(boost::multiprecision::denominator(rat));
  BigFloat rnum(boost::multiprecision::numerator(rad));
  BigFloat rden(boost::multiprecision::denominator(rad));
  BigFloat v = (num / den) * sqrt(rnum / rden);
  return v.convert_to<double>();
}

SqrtRational wigner_3j_exact(int two_j1, int two_j2, int two_j3,
                             int two_m1, int two_m2, int two_m3) {
  if (two_m1 + two_m2 + two_m3 != 0) return {};
  if (!triangle_ok(two_j1, two_j2, two_j3)) return {};
  if (!projection_valid(two_j1, two_m1) || !projection_valid(two_j2, two_m2) ||
      !projection_valid(two_j3, two_m3))
    return {};

  const int j1pm1 = (two_j1 + two_m1) / 2, j1mm1 = (two_j1 - two_m1) / 2;
  const int j2pm2 = (two_j2 + two_m2) / 2, j2mm2 = (two_j2 - two_m2) / 2;
  const int j3pm3 = (two_j3 + two_m3) / 2, j3mm3 = (two_j3 - two_m3) / 2;

  BigRat rad = triangle_delta(two_j1, two_j2, two_j3);
  rad *= BigRat(big_factorial(j1pm1) * big_factorial(j1mm1) * big_factorial(j2pm2) *
                big_factorial(j2mm2) * big_factorial(j3pm3) * big_factorial(j3mm3));

  // sum over t of (-1)^t / [t! (j1+j2-j3-t)! (j1-m1-t)! (j2+m2-t)!
  //                         (j3-j2+m1+t)! (j3-j1-m2+t)!]
  const int a1 = (two_j1 + two_j2 - two_j3) / 2;
  const int a2 = j1mm1;
  const int a3 = j2pm2;
  const int b1 = (two_j3 - two_j2 + two_m1) / 2;  // + t
  const int b2 = (two_j3 - two_j1 - two_m2) / 2;  // + t
  const int tmin = std::max({0, -b1, -b2});
  const int tmax = std::min({a1, a2, a3});
  BigRat sum = 0;
  for (int t = tmin; t <= tmax; ++t) {
    BigRat term(1, big_factorial(t) * big_factorial(a1 - t) * big_factorial(a2 - t) *
                       big_factorial(a3 - t) * big_factorial(b1 + t) * big_factorial(b2 + t));
    if (t % 2 != 0) term = -term;
    sum += term;
  }
  // overall phase (-1)^{j1-j2-m3}
  if (((two_j1 - two_j2 - two_m3) / 2) % 2 != 0) sum = -sum;
  return {sum, rad};
}

SqrtRational clebsch_gordan_exact(int two_j1, int two_m1, int two_j2, int two_m2,
                                  int two_J, int two_M) {
  SqrtRational w = wigner_3j_exact(two_j1, two_j2, two_J, two_m1, two_m2, -two_M);
  if (w.is_zero()) return {};
  w.rad *= (two_J + 1);
  if (((two_j1 - two_j2 + two_M) / 2) % 2 != 0) w.rat = -w.rat;
  return w;
}

SqrtRational wigner_6j_exact(int two_j1, int two_j2, int two_j3,
                             int two_j4, int two_j5, int two_j6) {
  if (!triangle_ok(two_j1, two_j2, two_j3) || !triangle_ok(two_j1, two_j5, two_j6) ||
      !triangle_ok(two_j4, two_j2, two_j6) || !triangle_ok(two_j4, two_j5, two_j3))
    return {};
  BigRat rad = triangle_delta(two_j1, two_j2, two_j3) * triangle_delta(two_j1, two_j5, two_j6) *
               triangle_delta(two_j4, two_j2, two_j6) * triangle_delta(two_j4, two_j5, two_j3);

  const int s1 = (two_j1 + two_j2 + two_j3) / 2;
  const int s2 = (two_j1 + two_j5 + two_j6) / 2;
  const int s3 = (two_j4 + two_j2 + two_j6) / 2;
  const int s4 = (two_j4 + two_j5 + two_j3) / 2;
  const int p1 = (two_j1 + two_j2 + two_j4 + two_j5) / 2;
  const int p2 = (two_j2 + two_j3 + two_j5 + two_j6) / 2;
  const int p3 = (two_j3 + two_j1 + two_j6 + two_j4) / 2;
  const int tmin = std::max({s1, s2, s3, s4});
  const int tmax = std::min({p1, p2, p3});
  BigRat sum = 0;
  for (int t = tmin; t <= tmax; ++t) {
    BigRat term(big_factorial(t + 1),
                big_factorial(t - s1) * big_factorial(t - s2) * big_factorial(t - s3) *
                    big_factorial(t - s4) * big_factorial(p1 - t) * big_factorial(p2 - t) *
                    big_factorial(p3 - t));
    if (t % 2 != 0) term = -term;
    sum += term;
  }
  return {sum, rad};
}

SqrtRational wigner_9j_exact(int two_j1, int two_j2, int two_j3,
                             int two_j4, int two_j5, int two_j6,
                             int two_j7, int two_j8, int two_j9) {
  // sum over x of (-1)^{2x} (2x+1) {j1 j2 j3; j6 j9 x}{j4 j5 j6; j2 x j8}{j7 j8 j9; x j1 j4}
  const int lo = std::max({std::abs(two_j1 - two_j9), std::abs(two_j2 - two_j6),
                           std::abs(two_j4 - two_j8)});
  const int hi = std::min({two_j1 + two_j9, two_j2 + two_j6, two_j4 + two_j8});
  if (lo > hi) return {};

  // x-independent radicand: the six triangles not involving x
  BigRat rad0 = 1;
  bool rad0_ok = triangle_ok(two_j1, two_j2, two_j3) && triangle_ok(two_j6, two_j9, two_j3) &&
                 triangle_ok(two_j4, two_j5, two_j6) && triangle_ok(two_j2, two_j5, two_j8) &&
                 triangle_ok(two_j7, two_j8, two_j9) && triangle_ok(two_j7, two_j1, two_j4);
  if (!rad0_ok) return {};
  rad0 *= triangle_delta(two_j1, two_j2, two_j3) * triangle_delta(two_j6, two_j9, two_j3) *
          triangle_delta(two_j4, two_j5, two_j6) * triangle_delta(two_j2, two_j5, two_j8) *
          triangle_delta(two_j7, two_j8, two_j9) * triangle_delta(two_j7, two_j1, two_j4);

  BigRat sum = 0;
  for (int tx = lo; tx <= hi; tx += 2) {
    SqrtRational a = wigner_6j_exact(two_j1, two_j2, two_j3, two_j6, two_j9, tx);
    if (a.is_zero()) continue;
    SqrtRational b = wigner_6j_exact(two_j4, two_j5, two_j6, two_j2, tx, two_j8);
    if (b.is_zero()) continue;
    SqrtRational c = wigner_6j_exact(two_j7, two_j8, two_j9, tx, two_j1, two_j4);
    if (c.is_zero()) continue;
    BigRat q = sqrt_exact(a.rad * b.rad * c.rad / rad0);
    BigRat term = a.rat * b.rat * c.rat * q * (tx + 1);
    if (tx % 2 != 0) term = -term;
    sum += term;
  }
  return {sum, rad0};
}

namespace {
using Key3 = std::array<int, 6>;
using Key6 = std::array<int, 6>;
using Key9 = std::array<int, 9>;
MemoTable<Key3, double> g_cg_memo;
MemoTable<Key3, double> g_3j_memo;
MemoTable<Key6, double> g_6j_memo;
MemoTable<Key9, double> g_9j_memo;
}  // namespace

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M) {
  Key3 k{two_j1, two_m1, two_j2, two_m2, two_J, two_M};
  return g_cg_memo.get(k, [&] {
    return clebsch_gordan_exact(two_j1, two_m1, two_j2, two_m2, two_J, two_M).to_double();
  });
}

double wigner_3j(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3) {
  Key3 k{two_j1, two_j2, two_j3, two_m1, two_m2, two_m3};
  return g_3j_memo.get(k, [&] {
    return wigner_3j_exact(two_j1, two_j2, two_j3, two_m1, two_m2, two_m3).to_double();
  });
}

double wigner_6j(int two_j1, int two_j2, int two_j3, int two_j4, int two_j5, int two_j6) {
  Key6 k{two_j1, two_j2, two_j3, two_j4, two_j5, two_j6};
  return g_6j_memo.get(k, [&] {
    return wigner_6j_exact(two_j1, two_j2, two_j3, two_j4, two_j5, two_j6).to_double();
  });
}

double wigner_9j(int two_j1, int two_j2, int two_j3, int two_j4, int two_j5, int two_j6,
                 int two_j7, int two_j8, int two_j9) {
  Key9 k{two_j1, two_j2, two_j3, two_j4, two_j5, two_j6, two_j7, two_j8, two_j9};
  return g_9j_memo.get(k, [&] {
    return wigner_9j_exact(two_j1, two_j2, two_j3, two_j4, two_j5, two_j6, two_j7, two_j8,
                           two_j9)
        .to_double();
  });
}

double double_brace(int p, int r, int j1p, int q, int s, int j2p, int j1, int j2, int J) {
  const double t1 = wigner_3j(2 * p, 2 * q, 2 * j1, 0, 0, 0);
  if (t1 == 0.0) return 0.0;
  const double t2 = wigner_3j(2 * s, 2 * r, 2 * j2, 0, 0, 0);
  if (t2 == 0.0) return 0.0;
  const double t3 = wigner_3j(2 * p, 2 * r, 2 * j1p, 0, 0, 0);
  if (t3 == 0.0) return 0.0;
  const double t4 = wigner_3j(2 * q, 2 * s, 2 * j2p, 0, 0, 0);
  if (t4 == 0.0) return 0.0;
  const double nine = wigner_9j(2 * p, 2 * r, 2 * j1p, 2 * q, 2 * s, 2 * j2p,
                                2 * j1, 2 * j2, 2 * J);
  if (nine == 0.0) return 0.0;
  const double dims = std::sqrt(double((2 * j1 + 1) * (2 * j2 + 1)) *
                                double((2 * j1p + 1) * (2 * j2p + 1)));
  return dims * (2 * p + 1) * (2 * q + 1) * (2 * s + 1) * (2 * r + 1) * t1 * t2 * t3 * t4 * nine;
}

}  // namespace hyper3b::coupling
