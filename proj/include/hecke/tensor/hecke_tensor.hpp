#pragma once

#include "hecke/satake/hecke_poly.hpp"
#include "hecke/tensor/composed.hpp"

namespace hecke {

/// Unitary-group factors on the torus side: degree 3 for U(3) with
/// eigenvalues q^2 {1, u, 1/u}, degree 2 for U(2) with q {v, 1/v}.
struct TensorFactors {
  TorusZPoly h_v;
  TorusZPoly h_w;
};

inline TensorFactors hecke_tensor_factors() {
  const TorusElement one(1);
  const LaurentQ q = LaurentQ::q();
  TorusZPoly lin = TorusZPoly::from_desc({one, TorusElement(-(q * q))});
  TorusZPoly quad = TorusZPoly::from_desc({one, TorusElement(-(q * q)) * s10_torus(), TorusElement(LaurentQ::q_pow(4))});
  TorusZPoly hw = TorusZPoly::from_desc({one, TorusElement(-q) * s01_torus(), TorusElement(q * q)});
  return {lin * quad, hw};
}

struct HeckeTensorReport {
  TorusZPoly composed;
  TorusZPoly expected;  // H^(2) H^(4)
  bool match = false;
  bool certificate_ok = false;
};

/// Composed product of the two factors against the degree-six Hecke
/// polynomial, together with its membership certificate.
inline HeckeTensorReport hecke_tensor_check() {
  HeckeTensorReport r;
  auto f = hecke_tensor_factors();
  r.composed = composed_product(f.h_v, f.h_w);
  auto th = hecke_polynomial_torus();
  r.expected = th.h2 * th.h4;
  r.match = r.composed == r.expected;
  r.certificate_ok = membership_certificate(f.h_v, f.h_w).verify();
  return r;
}

}  // namespace hecke
