#pragma once

namespace fraclab {

// Gamma function for x > 0. Lanczos approximation (g = 607/128, 15 terms)
// with reflection below 1/2; relative error near 1e-15.
double gamma_eval(double x);

// Fractional order s in (0,1) in dimension n with the constants of the
// integral representations:
//   c_ns   = Gamma((n-s)/2) / (pi^(n/2) 2^s Gamma(s/2))        (I_s kernel)
//   c_nsp  = s 2^(s-1) Gamma((n+s)/2) / (pi^(n/2) Gamma(1-s/2)) ((-Delta)^(s/2) kernel)
//   c_nsm  = 2^s Gamma((n+s+1)/2) / (pi^(n/2) Gamma((1-s)/2))   (fractional gradient kernel)
//   c_n1ms = c_{n,1-s}
struct FracOrder {
  int n = 1;
  double s = 0.5;
  double c_ns = 0.0;
  double c_nsp = 0.0;
  double c_nsm = 0.0;
  double c_n1ms = 0.0;
};

FracOrder make_frac_order(int n, double s);

// c_{n,a} for 0 < a < n.
double riesz_potential_constant(int n, double a);

// Gamma((n+1)/2) / pi^((n+1)/2), the Riesz transform kernel constant.
double riesz_transform_constant(int n);

}  // namespace fraclab
