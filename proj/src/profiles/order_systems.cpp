#include "disperlim/profiles/order_systems.hpp"

#include "disperlim/error.hpp"
#include "disperlim/spectral/ops.hpp"

namespace disperlim::profiles {

namespace {

using spectral::dealiased_product;
using spectral::forward_transform;
using spectral::inverse_transform;

class Bag {
 public:
  explicit Bag(const FieldMap& f) : f_(f), zero_(f.at("n1").grid(), 0.0) {}
  const RealField& operator()(const std::string& k) const {
    auto it = f_.find(k);
    return it == f_.end() ? zero_ : it->second;
  }
  const RealField& zero() const { return zero_; }

 private:
  const FieldMap& f_;
  RealField zero_;
};

RealField D(const RealField& f, int axis, int order = 1) {
  return spectral::spectral_derivative(f, axis, order);
}
RealField P(const RealField& a, const RealField& b) { return dealiased_product(a, b); }
RealField Dinv1(const RealField& f) {
  return inverse_transform(spectral::inverse_dx1_unchecked(forward_transform(f)));
}

}  // namespace

void add_velocity_rates(FieldMap& f, const OrderContext& ctx) {
  if (!f.count("n1") || !f.count("n1_t")) throw ConfigError("velocity rates need n1 and n1_t");
  const double V = ctx.V;
  const Bag b(f);
  const RealField& nt = b("n1_t");
  FieldMap r;
  r["u1_1_t"] = V * nt;
  RealField transport = P(nt, b("u1_1")) + P(b("n1"), r["u1_1_t"]);
  RealField cross(b.zero());
  if (ctx.d == 2) {
    r["u2_1_t"] = V * Dinv1(D(nt, 1));
    cross = D(r["u2_1_t"], 1);
  } else {
    r["u2_1_t"] = (-V * V) * D(nt, 2);
    r["u3_1_t"] = (V * V) * D(nt, 1);
    r["u2_2_t"] = V * D(r["u3_1_t"], 0);
    r["u3_2_t"] = -V * D(r["u2_1_t"], 0);
    cross = D(r["u2_2_t"], 1) + D(r["u3_2_t"], 2);
  }
  if (f.count("n1_tt")) {
    RealField U_t = Dinv1(-1.0 * b("n1_tt") - D(transport, 0) - cross);
    r["u1_2_t"] = ctx.kappa * b("n2_t") + U_t;
    r["U_t"] = std::move(U_t);
  }
  for (auto& [k, v] : r) f.insert_or_assign(k, std::move(v));
}

RealField eps3_combination(const FieldMap& f, const OrderContext& ctx) {
  const Bag b(f);
  const double V = ctx.V, Ti = ctx.Ti();
  const RealField &n1 = b("n1"), &n2 = b("n2"), &n3 = b("n3");
  const RealField &u11 = b("u1_1"), &u12 = b("u1_2"), &u13 = b("u1_3");
  const RealField &phi1 = b("phi1"), &phi2 = b("phi2");
  const RealField d1n1 = D(n1, 0), d1n2 = D(n2, 0), d1u11 = D(u11, 0), d1u12 = D(u12, 0);

  RealField dens = -V * D(n3, 0) + P(n1, d1u12) + P(n2, d1u11) + P(u11, d1n2) + P(u12, d1n1) +
                   b("n2_t") + D(u13, 0);
  RealField mom = Ti * P(P(n1, n1), d1n1) - Ti * P(n1, d1n2) - Ti * P(n2, d1n1) + Ti * D(n3, 0) -
                  V * D(u13, 0) + P(u11, d1u12) + P(u12, d1u11) + b("u1_2_t");
  RealField phi3 = n3 - (1.0 / 6.0) * P(P(phi1, phi1), phi1) - P(phi1, phi2);
  if (ctx.d == 2) {
    const RealField &u21 = b("u2_1"), &u22 = b("u2_2");
    dens += P(n1, D(u21, 1)) + P(u21, D(n1, 1)) + D(u22, 1);
    mom += P(u21, D(u11, 1));
    phi3 += D(phi1, 1, 2) + D(phi2, 0, 2);
  } else {
    const RealField &u22 = b("u2_2"), &u32 = b("u3_2"), &u24 = b("u2_4"), &u34 = b("u3_4");
    dens += P(n1, D(u22, 1)) + P(n1, D(u32, 2)) + P(u22, D(n1, 1)) + P(u32, D(n1, 2)) +
            D(u24, 1) + D(u34, 2);
    mom += P(u22, D(u11, 1)) + P(u32, D(u11, 2));
    phi3 += spectral::laplacian(phi2);
  }
  mom += D(phi3, 0);
  RealField comb = V * dens + mom;
  return ctx.d == 2 ? D(comb, 0) : comb;
}

std::map<std::string, RealField> order_equations(const FieldMap& f, const OrderContext& ctx,
                                                 int max_power) {
  const Bag b(f);
  const double V = ctx.V, Ti = ctx.Ti();
  const RealField &n1 = b("n1"), &n2 = b("n2");
  const RealField &u11 = b("u1_1"), &u12 = b("u1_2"), &u21 = b("u2_1");
  const RealField &phi1 = b("phi1"), &phi2 = b("phi2");
  const RealField d1n1 = D(n1, 0);
  std::map<std::string, RealField> r;

  // eps^1
  r["eps1.n"] = -V * d1n1 + D(u11, 0);
  r["eps1.u1"] = Ti * d1n1 - V * D(u11, 0) + D(phi1, 0);
  r["eps1.phi"] = n1 - phi1;
  if (ctx.d == 3) {
    r["eps1.u2"] = Ti * D(n1, 1) - b("u3_1") + D(phi1, 1);
    r["eps1.u3"] = Ti * D(n1, 2) + u21 + D(phi1, 2);
  }
  if (max_power < 3) return r;

  // eps^{3/2}
  if (ctx.d == 2) {
    r["eps3/2.u2"] = Ti * D(n1, 1) - V * D(u21, 0) + D(phi1, 1);
  } else {
    r["eps3/2.n"] = D(u21, 1) + D(b("u3_1"), 2);
    r["eps3/2.u2"] = -V * D(u21, 0) - b("u3_2");
    r["eps3/2.u3"] = -V * D(b("u3_1"), 0) + b("u2_2");
  }
  if (max_power < 4) return r;

  // eps^2
  RealField n_eq = -V * D(n2, 0) + P(n1, D(u11, 0)) + P(u11, d1n1) + b("n1_t") + D(u12, 0);
  if (ctx.d == 2) {
    n_eq += D(u21, 1);
  } else {
    n_eq += D(b("u2_2"), 1) + D(b("u3_2"), 2);
  }
  r["eps2.n"] = std::move(n_eq);
  r["eps2.u1"] = -Ti * P(n1, d1n1) + Ti * D(n2, 0) - V * D(u12, 0) + P(u11, D(u11, 0)) +
                 D(phi2, 0) + b("u1_1_t");
  r["eps2.phi"] = n2 - 0.5 * P(phi1, phi1) - phi2 +
                  (ctx.d == 2 ? D(phi1, 0, 2) : spectral::laplacian(phi1));
  if (ctx.d == 3) {
    r["eps2.u2"] = -Ti * P(n1, D(n1, 1)) + Ti * D(n2, 1) - V * D(b("u2_2"), 0) - b("u3_3") +
                   D(phi2, 1);
    r["eps2.u3"] = -Ti * P(n1, D(n1, 2)) + Ti * D(n2, 2) - V * D(b("u3_2"), 0) + b("u2_3") +
                   D(phi2, 2);
  }
  if (max_power < 5) return r;

  // eps^{5/2}
  if (ctx.d == 2) {
    r["eps5/2.u2"] = -Ti * P(n1, D(n1, 1)) + Ti * D(n2, 1) - V * D(b("u2_2"), 0) +
                     P(u11, D(u21, 0)) + D(phi2, 1) + b("u2_1_t");
  } else {
    const RealField& u31 = b("u3_1");
    r["eps5/2.n"] = P(n1, D(u21, 1)) + P(n1, D(u31, 2)) + P(u21, D(n1, 1)) + P(u31, D(n1, 2)) +
                    D(b("u2_3"), 1) + D(b("u3_3"), 2);
    r["eps5/2.u1"] = P(u21, D(u11, 1)) + P(u31, D(u11, 2));
    r["eps5/2.u2"] = -V * D(b("u2_3"), 0) + P(u11, D(u21, 0)) - b("u3_4") + b("u2_1_t");
    r["eps5/2.u3"] = -V * D(b("u3_3"), 0) + P(u11, D(u31, 0)) + b("u2_4") + b("u3_1_t");
  }
  if (max_power < 6) return r;

  r["eps3.combined"] = eps3_combination(f, ctx);
  return r;
}

}  // namespace disperlim::profiles
