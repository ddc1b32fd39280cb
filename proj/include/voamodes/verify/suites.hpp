#pragma once

#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "voamodes/voamodes.hpp"
#include "voamodes/verify/config.hpp"

namespace voamodes::verify {

// Shared state for one verification run.
class Context {
 public:
  explicit Context(RunConfig cfg) : cfg_(std::move(cfg)), V_(cfg_.effective_cap()) {
    cfg_.validate();
    const int cap = cfg_.effective_cap();
    for (const auto& c : cfg_.charges) probes_.emplace_back(c, cap);
    const std::vector<std::pair<Rational, Rational>> pairs = {
        {make_rational(1, 2), make_rational(1, 2)},
        {Rational(1), make_rational(-1, 2)},
        {Rational(0), Rational(1)}};
    for (const auto& [a, b] : pairs) intertwiners_.emplace_back(a, b, cap);
    for (const auto& P : probes_) actions_.push_back(module_action_intertwiner(P));
  }

  const RunConfig& config() const { return cfg_; }
  const HeisenbergVOA& V() const { return V_; }
  const std::vector<FockModule>& probes() const { return probes_; }
  ProbeFamily<FockModule> probe_family() const { return {probes_}; }
  const std::vector<FockIntertwiner>& intertwiners() const { return intertwiners_; }
  const std::vector<FockIntertwiner>& module_actions() const { return actions_; }

  // Intertwiners and module actions, grouped by their first source module.
  std::vector<std::pair<FockModule, std::vector<FockIntertwiner>>> by_first_source() const {
    std::vector<std::pair<FockModule, std::vector<FockIntertwiner>>> groups;
    auto place = [&](const FockIntertwiner& y) {
      for (auto& g : groups) {
        if (g.first.lambda() == y.source1().lambda()) {
          for (const auto& seen : g.second)
            if (seen.source2().lambda() == y.source2().lambda()) return;
          g.second.push_back(y);
          return;
        }
      }
      groups.push_back({y.source1(), {y}});
    };
    for (const auto& y : intertwiners_) place(y);
    for (const auto& y : actions_) place(y);
    return groups;
  }

  std::vector<Partition> v_basis() const { return partitions_up_to(cfg_.max_v_weight); }
  std::vector<Partition> omega_basis() const { return partitions_up_to(cfg_.N); }

  CertificationGrid certification_grid() const {
    return {cfg_.N, cfg_.p_lo, cfg_.p_hi, cfg_.max_v_weight, cfg_.N};
  }

  // rho(Y(1/2,1/2)) on bounds large enough for every certifier lookup.
  const MapTable& fock_table() const {
    std::call_once(table_once_, [this] {
      table_.emplace(rho(intertwiners_.front(), certification_grid().table_bounds()));
    });
    return *table_;
  }

  // Deterministic per-suite generator.
  std::mt19937_64 rng(const std::string& suite) const {
    std::uint64_t h = cfg_.seed * 0x9E3779B97F4A7C15ULL;
    for (char c : suite) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001B3ULL;
    return std::mt19937_64(h);
  }

 private:
  RunConfig cfg_;
  HeisenbergVOA V_;
  std::vector<FockModule> probes_;
  std::vector<FockIntertwiner> intertwiners_;
  std::vector<FockIntertwiner> actions_;
  mutable std::once_flag table_once_;
  mutable std::optional<MapTable> table_;
};

inline size_t pick(std::mt19937_64& g, size_t n) { return static_cast<size_t>(g() % n); }

inline std::string ix(std::initializer_list<int> xs) {
  std::string s;
  for (int x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

inline Tally suite_homomorphism(const Context& ctx) {
  Tally t;
  const int N = ctx.config().N;
  const auto vs = ctx.v_basis();
  const auto ws = ctx.omega_basis();
  for (int k = 0; k <= N; ++k)
    for (int n = 0; n <= N; ++n)
      for (int l = 0; l <= N; ++l)
        for (const auto& u : vs)
          for (const auto& v : vs) {
            VMatrix uv = diamond_VV(ctx.V(), VMatrix::single(k, n, VAElement(u)),
                                    VMatrix::single(n, l, VAElement(v)));
            for (const auto& P : ctx.probes())
              for (const auto& w : ws) {
                ModuleVector lhs = theta_W(P, uv, ModuleVector(w));
                ModuleVector rhs =
                    P.theta(k, n, VAElement(u), P.theta(n, l, VAElement(v), ModuleVector(w)));
                t.record(lhs == rhs, [&] {
                  return Failure{P.name() + " k,n,l=" + ix({k, n, l}) + " u=" + u.str() +
                                     " v=" + v.str() + " w=" + w.str(),
                                 lhs.str(), rhs.str()};
                });
              }
          }
  // associativity modulo probes on random triples
  auto g = ctx.rng("homomorphism");
  const int M = std::min(N, 1);
  const auto small = partitions_up_to(std::min(ctx.config().max_v_weight, 2));
  for (int trial = 0; trial < 40; ++trial) {
    int k = static_cast<int>(pick(g, M + 1)), m = static_cast<int>(pick(g, M + 1));
    int n = static_cast<int>(pick(g, M + 1)), l = static_cast<int>(pick(g, M + 1));
    VMatrix a = VMatrix::single(k, m, VAElement(small[pick(g, small.size())]));
    VMatrix b = VMatrix::single(m, n, VAElement(small[pick(g, small.size())]));
    VMatrix c = VMatrix::single(n, l, VAElement(small[pick(g, small.size())]));
    VMatrix left = diamond_VV(ctx.V(), diamond_VV(ctx.V(), a, b), c);
    VMatrix right = diamond_VV(ctx.V(), a, diamond_VV(ctx.V(), b, c));
    t.record(probe_equal(left, right, ctx.probe_family()), [&] {
      return Failure{"associativity a=" + a.str() + " b=" + b.str() + " c=" + c.str(), left.str(),
                     right.str()};
    });
  }
  return t;
}

inline Tally suite_unit(const Context& ctx) {
  Tally t;
  const int N = ctx.config().N;
  const auto vs = ctx.v_basis();
  const auto ws = ctx.omega_basis();
  const VMatrix one = identity_N(N);
  const VAElement vac = HeisenbergVOA::vacuum();
  for (const auto& P : ctx.probes())
    for (const auto& w : ws) {
      ModuleVector got = theta_W(P, one, ModuleVector(w));
      t.record(got == ModuleVector(w), [&] {
        return Failure{P.name() + " identity on w=" + w.str(), got.str(), ModuleVector(w).str()};
      });
    }
  for (int n = 0; n <= N; ++n)
    for (int l = 0; l <= N; ++l)
      for (const auto& v : vs) {
        VMatrix got = diamond_VV(ctx.V(), VMatrix::single(n, n, vac),
                                 VMatrix::single(n, l, VAElement(v)));
        VMatrix want = VMatrix::single(n, l, VAElement(v));
        t.record(got == want, [&] {
          return Failure{"[1]_nn <> [v]_nl n,l=" + ix({n, l}) + " v=" + v.str(), got.str(),
                         want.str()};
        });
      }
  for (const auto& P : ctx.probes())
    for (int k = 0; k <= N; ++k)
      for (int n = 0; n <= N; ++n)
        for (int l = 0; l <= N; ++l)
          for (const auto& w : ws) {
            ModuleVector wv(w);
            if (k == n) {
              WMatrix got = diamond_VW(P, VMatrix::single(n, n, vac), WMatrix::single(n, l, wv));
              t.record(got == WMatrix::single(n, l, wv), [&] {
                return Failure{P.name() + " [1]_nn <> [w]_nl n,l=" + ix({n, l}) + " w=" + w.str(),
                               got.str(), WMatrix::single(n, l, wv).str()};
              });
            }
            WMatrix got = diamond_WV(P, WMatrix::single(k, n, wv), VMatrix::single(n, l, vac));
            WMatrix want = n == l ? WMatrix::single(k, l, wv) : WMatrix{};
            t.record(got == want, [&] {
              return Failure{P.name() + " [w]_kn <> [1]_nl k,n,l=" + ix({k, n, l}) + " w=" +
                                 w.str(),
                             got.str(), want.str()};
            });
          }
  for (int k = 0; k <= N; ++k)
    for (int l = 0; l <= N; ++l) {
      VMatrix a = VMatrix::single(k, l, vac);
      VMatrix b = k == l ? VMatrix::single(l, l, vac) : VMatrix{};
      t.record(probe_equal(a, b, ctx.probe_family()), [&] {
        return Failure{"[1]_kl vs delta [1]_ll k,l=" + ix({k, l}), a.str(), b.str()};
      });
    }
  for (int k = 0; k <= N; ++k)
    for (int l = 0; l <= N; ++l)
      for (const auto& v : vs) {
        VMatrix a = VMatrix::single(k, l, VAElement(v));
        VMatrix la = diamond_VV(ctx.V(), one, a);
        VMatrix ra = diamond_VV(ctx.V(), a, one);
        t.record(probe_equal(la, a, ctx.probe_family()), [&] {
          return Failure{"1 <> a, a=" + a.str(), la.str(), a.str()};
        });
        t.record(probe_equal(ra, a, ctx.probe_family()), [&] {
          return Failure{"a <> 1, a=" + a.str(), ra.str(), a.str()};
        });
      }
  return t;
}

inline Tally suite_bimodule(const Context& ctx) {
  Tally t;
  const int N = ctx.config().N;
  const auto vs = ctx.v_basis();
  const auto ws = ctx.omega_basis();
  for (const auto& Y : ctx.intertwiners()) {
    const auto& W1 = Y.source1();
    const auto& W2 = Y.source2();
    const auto& W3 = Y.target();
    for (int k = 0; k <= N; ++k)
      for (int n = 0; n <= N; ++n)
        for (int l = 0; l <= N; ++l)
          for (const auto& v : vs)
            for (const auto& w1 : ws) {
              VAElement vv(v);
              ModuleVector a(w1);
              WMatrix left = diamond_VW(W1, VMatrix::single(k, n, vv), WMatrix::single(n, l, a));
              WMatrix right = diamond_WV(W1, WMatrix::single(k, n, a), VMatrix::single(n, l, vv));
              for (const auto& w2 : ws) {
                ModuleVector b(w2);
                ModuleVector lhs = theta_Y(Y, left, b);
                ModuleVector rhs = W3.theta(k, n, vv, theta_Y(Y, n, l, a, b));
                t.record(lhs == rhs, [&] {
                  return Failure{Y.name() + " left k,n,l=" + ix({k, n, l}) + " v=" + v.str() +
                                     " w1=" + w1.str() + " w2=" + w2.str(),
                                 lhs.str(), rhs.str()};
                });
                ModuleVector lhs2 = theta_Y(Y, right, b);
                ModuleVector rhs2 = theta_Y(Y, k, n, a, W2.theta(n, l, vv, b));
                t.record(lhs2 == rhs2, [&] {
                  return Failure{Y.name() + " right k,n,l=" + ix({k, n, l}) + " v=" + v.str() +
                                     " w1=" + w1.str() + " w2=" + w2.str(),
                                 lhs2.str(), rhs2.str()};
                });
              }
            }
  }
  return t;
}

inline Tally suite_three_forms(const Context& ctx) {
  Tally t;
  const int N = ctx.config().N;
  const auto vs = ctx.v_basis();
  const auto ws = ctx.omega_basis();
  for (const auto& P : ctx.probes())
    for (int k = 0; k <= N; ++k)
      for (int n = 0; n <= N; ++n)
        for (int l = 0; l <= N; ++l)
          for (const auto& v : vs)
            for (const auto& w : ws) {
              ModuleVector a =
                  right_product_entry(P, k, n, l, ModuleVector(w), VAElement(v), RightForm::direct);
              ModuleVector b = right_product_entry(P, k, n, l, ModuleVector(w), VAElement(v),
                                                   RightForm::conjugated);
              ModuleVector c = right_product_entry(P, k, n, l, ModuleVector(w), VAElement(v),
                                                   RightForm::right_op);
              auto where = [&] {
                return P.name() + " k,n,l=" + ix({k, n, l}) + " v=" + v.str() + " w=" + w.str();
              };
              t.record(a == b, [&] { return Failure{where() + " direct vs conjugated", a.str(), b.str()}; });
              t.record(b == c, [&] { return Failure{where() + " conjugated vs right-op", b.str(), c.str()}; });
            }
  // on V itself the right vertex operator is the vertex operator (skew symmetry)
  const FockModule V0 = adjoint_module(ctx.config().effective_cap());
  const auto small = partitions_up_to(std::min(ctx.config().max_v_weight, 2));
  for (const auto& u : small)
    for (const auto& v : small) {
      auto lhs = right_vertex_op(V0, ModuleVector(u), VAElement(v), 4);
      auto rhs = ctx.V()
                     .vertex_series(VAElement(u), VAElement(v), -(u.weight() + v.weight()), 4);
      t.record(lhs == rhs, [&] {
        return Failure{"skew symmetry u=" + u.str() + " v=" + v.str(), render(lhs), render(rhs)};
      });
    }
  return t;
}

inline Tally suite_kernel(const Context& ctx) {
  Tally t;
  const RunConfig& c = ctx.config();
  const auto vs = ctx.v_basis();
  const auto ws = ctx.omega_basis();
  for (const auto& [W1, ys] : ctx.by_first_source())
    for (int k = 0; k <= c.N; ++k)
      for (int l = 0; l <= c.N; ++l)
        for (int n = 0; n <= c.N; ++n)
          for (int p = c.p_lo; p <= c.p_hi; ++p) {
            if (l + p < 0) continue;
            for (const auto& v : vs)
              for (const auto& w : ws) {
                WMatrix K = jacobi_kernel_element(W1, k, l, n, p, VAElement(v), ModuleVector(w));
                for (const auto& Y : ys)
                  for (const auto& w2 : partitions_of(l + p)) {
                    ModuleVector r = theta_Y(Y, K, ModuleVector(w2));
                    t.record(r.is_zero(), [&] {
                      return Failure{Y.name() + " k,l,n,p=" + ix({k, l, n, p}) + " v=" + v.str() +
                                         " w=" + w.str() + " w2=" + w2.str(),
                                     r.str(), "0"};
                    });
                  }
              }
          }
  return t;
}

inline Tally suite_omega_commutators(const Context& ctx) {
  Tally t;
  const RunConfig& c = ctx.config();
  const VAElement omega = HeisenbergVOA::conformal_vector();
  const auto ws = ctx.omega_basis();
  for (const auto& [W1, ys] : ctx.by_first_source())
    for (int n = 0; n <= c.N; ++n)
      for (int l = 0; l <= c.N; ++l)
        for (const auto& w : ws) {
          ModuleVector wv(w);
          WMatrix A = omega0_kernel_element(W1, n, l, wv);
          WMatrix B = jacobi_kernel_element(W1, n, l, n, 0, omega, wv);
          WMatrix C = omega1_kernel_element(W1, n, l, wv);
          WMatrix D = jacobi_kernel_element(W1, n + 1, l, n, 0, omega, wv);
          const std::string where = W1.name() + " n,l=" + ix({n, l}) + " w=" + w.str();
          t.record(A == B, [&] { return Failure{where + " omega(0) element", A.str(), B.str()}; });
          t.record(C == D, [&] { return Failure{where + " omega(-1) element", C.str(), D.str()}; });
          for (const auto& Y : ys)
            for (const auto& w2 : partitions_of(l)) {
              ModuleVector ra = theta_Y(Y, A, ModuleVector(w2));
              ModuleVector rc = theta_Y(Y, C, ModuleVector(w2));
              t.record(ra.is_zero(), [&] { return Failure{where + " " + Y.name() + " omega(0) image", ra.str(), "0"}; });
              t.record(rc.is_zero(), [&] { return Failure{where + " " + Y.name() + " omega(-1) image", rc.str(), "0"}; });
            }
        }
  // Virasoro relations on V and on the probes
  std::vector<FockModule> spaces{adjoint_module(c.effective_cap())};
  for (const auto& P : ctx.probes()) spaces.push_back(P);
  const Rational cc = HeisenbergVOA::central_charge();
  for (const auto& W : spaces)
    for (const auto& w : partitions_up_to(std::max(c.L_max - 2, 0)))
      for (int m = -2; m <= 2; ++m)
        for (int n = -2; n <= 2; ++n) {
          ModuleVector wv(w);
          ModuleVector lhs = W.L(m, W.L(n, wv)) - W.L(n, W.L(m, wv));
          ModuleVector rhs = Rational(m - n) * W.L(m + n, wv);
          if (m + n == 0) rhs.axpy(cc * make_rational(m * m * m - m, 12), wv);
          t.record(lhs == rhs, [&] {
            return Failure{W.name() + " [L(" + std::to_string(m) + "),L(" + std::to_string(n) +
                               ")] on " + w.str(),
                           lhs.str(), rhs.str()};
          });
        }
  // graded-module commutators for theta
  for (const auto& P : ctx.probes())
    for (int k = 0; k <= c.N; ++k)
      for (int l = 0; l <= c.N; ++l)
        for (const auto& v : ctx.v_basis())
          for (const auto& w : partitions_of(l)) {
            VAElement vv(v);
            ModuleVector wv(w);
            ModuleVector th = P.theta(k, l, vv, wv);
            ModuleVector lhs0 = P.L0(th) - P.theta(k, l, vv, P.L0(wv));
            ModuleVector rhs0 = Rational(k - l) * th;
            t.record(lhs0 == rhs0, [&] {
              return Failure{P.name() + " [L(0),theta] k,l=" + ix({k, l}) + " v=" + v.str(),
                             lhs0.str(), rhs0.str()};
            });
            // on level l: L(-1) theta_{kl} - theta_{k+1,l+1} L(-1) = theta([L(-1)v]_{k+1,l})
            ModuleVector lw = P.Lminus1(wv);
            ModuleVector comm = P.Lminus1(th) - P.theta(k + 1, l + 1, vv, lw);
            ModuleVector rhs1 = P.theta(k + 1, l, ctx.V().Lminus1(vv), wv);
            t.record(comm == rhs1, [&] {
              return Failure{P.name() + " [L(-1),theta] k,l=" + ix({k, l}) + " v=" + v.str(),
                             comm.str(), rhs1.str()};
            });
          }
  return t;
}

inline Tally suite_binomial(const Context&) {
  Tally t;
  auto identity = [](long a, long q) {
    Rational s = 0;
    for (long m = 0; m <= q; ++m) s += gen_binomial(a, m) * gen_binomial(a - m, q - m) * sign_power(q - m);
    return s;
  };
  for (int n = 0; n <= 6; ++n)
    for (int q = 0; q <= n; ++q)
      for (int k = 0; k <= 4; ++k)
        for (int l = 0; l <= 4; ++l) {
          long a = -k + n - l - 1;
          Rational s = identity(a, q);
          Rational want = q == 0 ? 1 : 0;
          t.record(s == want, [&] {
            return Failure{"q,n,k,l=" + ix({q, n, k, l}), s.get_str(), want.get_str()};
          });
        }
  for (long a = -10; a <= 0; ++a)
    for (int n = 0; n <= 8; ++n)
      for (int q = 0; q <= n; ++q) {
        Rational s = identity(a, q);
        Rational want = q == 0 ? 1 : 0;
        t.record(s == want, [&] {
          return Failure{"a,q=" + ix({static_cast<int>(a), q}), s.get_str(), want.get_str()};
        });
      }
  return t;
}

inline Tally suite_conjugation(const Context& ctx) {
  Tally t;
  const int N = ctx.config().N;
  const auto ws = ctx.omega_basis();
  std::vector<FockIntertwiner> all = ctx.intertwiners();
  for (const auto& a : ctx.module_actions()) all.push_back(a);
  for (const auto& Y : all)
    for (const auto& w1 : ws)
      for (const auto& w2 : ws) {
        ModuleVector a(w1), b(w2);
        auto direct = coeff_log(Y.series(a, b, 0, N), 0);
        auto conj = conjugation_series(Y, a, b, 0, N);
        t.record(direct == conj, [&] {
          return Failure{Y.name() + " series w1=" + w1.str() + " w2=" + w2.str(), render(direct),
                         render(conj)};
        });
        for (int lev = 0; lev <= N; ++lev) {
          Rational m = Y.source1().weight_of_level(w1.weight()) +
                       Y.source2().weight_of_level(w2.weight()) - Y.target().weight_of_level(lev) - 1;
          ModuleVector mode = intertwiner_Yk_mode(Y, 0, m, a, b);
          ModuleVector one = value_at_one(Y, a, b, lev);
          t.record(mode == one, [&] {
            return Failure{Y.name() + " mode m=" + m.get_str() + " w1=" + w1.str() + " w2=" + w2.str(),
                           mode.str(), one.str()};
          });
          ModuleVector logmode = intertwiner_Yk_mode(Y, 1, m, a, b);
          t.record(logmode.is_zero(), [&] {
            return Failure{Y.name() + " log mode m=" + m.get_str(), logmode.str(), "0"};
          });
        }
      }
  // theta of the module action agrees with theta_W
  for (size_t i = 0; i < ctx.probes().size(); ++i) {
    const auto& P = ctx.probes()[i];
    const auto& Y = ctx.module_actions()[i];
    for (int k = 0; k <= N; ++k)
      for (int l = 0; l <= N; ++l)
        for (const auto& v : ctx.v_basis())
          for (const auto& w : partitions_of(l)) {
            ModuleVector lhs = theta_Y(Y, k, l, ModuleVector(v), ModuleVector(w));
            ModuleVector rhs = P.theta(k, l, VAElement(v), ModuleVector(w));
            t.record(lhs == rhs, [&] {
              return Failure{P.name() + " module action k,l=" + ix({k, l}) + " v=" + v.str(),
                             lhs.str(), rhs.str()};
            });
          }
  }
  return t;
}

constexpr int kExpLDegree = 6;

inline Tally suite_exp_L(const Context& ctx) {
  Tally t;
  for (const auto& P : ctx.probes())
    for (const auto& w : partitions_up_to(ctx.config().L_max)) {
      ModuleVector wv(w);
      auto lhs = apply_exp_x_Lminus1(P, one_plus_x_L0(P, wv, kExpLDegree), kExpLDegree);
      auto rhs = apply_one_plus_x_A(P, LogLaurent<ModuleVector>::monomial(Rational(0), wv),
                                    kExpLDegree, +1);
      t.record(lhs == rhs, [&] {
        return Failure{P.name() + " w=" + w.str(), render(lhs), render(rhs)};
      });
    }
  return t;
}

// One entry of f moved by a unit vector of the right level.
inline MapTable corrupted(const MapTable& f) {
  MapTable g = f;
  TableKey key{0, 0, Partition{}, Partition{}};
  g.set(key, f.entry(key) + ModuleVector(Partition{}));
  return g;
}

inline MapTable combine(const Rational& a, const MapTable& f, const Rational& b, const MapTable& g) {
  MapTable out = f.scaled(a);
  for (const auto& [key, v] : g.entries()) out.set(key, out.entry(key) + b * v);
  return out;
}

inline MapTable zero_table(const MapTable& f) {
  return MapTable(f.bounds(), f.source1(), f.source2(), f.target());
}

inline Tally suite_roundtrip(const Context& ctx) {
  Tally t;
  const MapTable& f = ctx.fock_table();
  const auto& Y = ctx.intertwiners().front();
  t.merge(roundtrip(f));
  Tally z = roundtrip(zero_table(f));
  t.record(z.ok(), [&] { return Failure{"zero table", "roundtrip failure", "0"}; });
  const Rational c = make_rational(3, 2);
  MapTable cf = f.scaled(c);
  Tally sc = roundtrip(cf);
  t.record(sc.ok() && cf == f.scaled(c), [&] {
    return Failure{"scaled table", sc.first_failure ? sc.first_failure->lhs : "", ""};
  });
  // rho_N is the restriction of rho
  const int N = ctx.config().N;
  MapTable fN = rho_N(Y, N);
  for (const auto& key : fN.grid()) {
    ModuleVector a = fN.entry(key), b = f.entry(key);
    t.record(a == b, [&] { return Failure{"rho_N " + key.str(), a.str(), b.str()}; });
  }
  // Y^f reproduces the expansion of Y on the window
  for (const auto& w1 : ctx.omega_basis())
    for (const auto& w2 : ctx.omega_basis()) {
      auto a = yf_series(f, ModuleVector(w1), ModuleVector(w2), 0, N);
      auto b = coeff_log(Y.series(ModuleVector(w1), ModuleVector(w2), 0, N), 0);
      t.record(a == b, [&] {
        return Failure{"Y^f series w1=" + w1.str() + " w2=" + w2.str(), render(a), render(b)};
      });
    }
  // Y^f is linear in f: random two-term combinations
  auto g = ctx.rng("roundtrip");
  const MapTable other = corrupted(f);
  for (int trial = 0; trial < 4; ++trial) {
    Rational a = make_rational(static_cast<long>(pick(g, 7)) - 3, static_cast<long>(pick(g, 3)) + 1);
    Rational b = make_rational(static_cast<long>(pick(g, 7)) - 3, static_cast<long>(pick(g, 3)) + 1);
    MapTable comb = combine(a, f, b, other);
    for (const auto& w1 : ctx.omega_basis())
      for (const auto& w2 : ctx.omega_basis()) {
        ModuleVector x(w1), y(w2);
        auto lhs = yf_series(comb, x, y, 0, N);
        auto rhs = yf_series(f, x, y, 0, N);
        rhs *= a;
        auto rhs2 = yf_series(other, x, y, 0, N);
        rhs2 *= b;
        rhs += rhs2;
        t.record(lhs == rhs, [&] {
          return Failure{"linearity a=" + a.get_str() + " b=" + b.get_str() + " w1=" + w1.str() +
                             " w2=" + w2.str(),
                         render(lhs), render(rhs)};
        });
      }
  }
  // every slice lands in level k
  for (const auto& [key, v] : f.entries())
    t.record(v.is_homogeneous() && v.level() == key.k,
             [&] { return Failure{"level of " + key.str(), v.str(), "level k"}; });
  return t;
}

inline Tally suite_jacobi_cert(const Context& ctx) {
  Tally t;
  const MapTable& f = ctx.fock_table();
  const auto grid = ctx.certification_grid();
  t.merge(certify_jacobi(f, grid));
  Tally z = certify_jacobi(zero_table(f), grid);
  t.record(z.ok(), [&] { return Failure{"zero table", z.first_failure->lhs, "0"}; });
  Tally bad = certify_jacobi(corrupted(f), grid);
  Tally bad_l1 = certify_L1_derivative(corrupted(f), grid);
  t.record(!bad.ok() || !bad_l1.ok(),
           [&] { return Failure{"corrupted table", "no certifier failed", "a failure"}; });
  return t;
}

inline Tally suite_L1_cert(const Context& ctx) {
  Tally t;
  const MapTable& f = ctx.fock_table();
  const auto grid = ctx.certification_grid();
  t.merge(certify_L1_derivative(f, grid));
  Tally z = certify_L1_derivative(zero_table(f), grid);
  t.record(z.ok(), [&] { return Failure{"zero table", z.first_failure->lhs, "0"}; });
  Tally bad = certify_L1_derivative(corrupted(f), grid);
  t.record(!bad.ok(), [&] { return Failure{"corrupted table", "derivative relation held", "a failure"}; });
  return t;
}

struct OppositeCalibration {
  std::vector<OppositeSign> passing;
  Tally cases;  // adjoint identity cases for the passing sign
};

inline OppositeCalibration calibrate_opposite(const Context& ctx) {
  OppositeCalibration cal;
  const int N = ctx.config().N;
  for (OppositeSign s : {OppositeSign::plus, OppositeSign::minus}) {
    Tally t;
    for (const auto& P : ctx.probes()) {
      if (sgn(P.lambda()) == 0) continue;
      for (int k = 0; k <= N; ++k)
        for (int l = 0; l <= N; ++l)
          for (const auto& v : ctx.v_basis()) {
            VMatrix m = VMatrix::single(k, l, VAElement(v));
            VMatrix O = opposite_map(ctx.V(), m, s);
            for (const auto& wp : ctx.omega_basis())
              for (const auto& w : ctx.omega_basis()) {
                Rational lhs = FockModule::pairing(theta_contragredient(P, m, ModuleVector(wp)),
                                                   ModuleVector(w));
                Rational rhs = FockModule::pairing(ModuleVector(wp), theta_W(P, O, ModuleVector(w)));
                t.record(lhs == rhs, [&] {
                  return Failure{P.name() + " k,l=" + ix({k, l}) + " v=" + v.str() + " w'=" +
                                     wp.str() + " w=" + w.str(),
                                 lhs.get_str(), rhs.get_str()};
                });
              }
          }
    }
    if (t.ok() && t.run > 0) {
      cal.passing.push_back(s);
      cal.cases = t;
    }
  }
  return cal;
}

inline Tally suite_opposite(const Context& ctx) {
  Tally t;
  OppositeCalibration cal = calibrate_opposite(ctx);
  t.record(cal.passing.size() == 1, [&] {
    return Failure{"sign calibration", std::to_string(cal.passing.size()) + " passing signs", "1"};
  });
  if (cal.passing.size() != 1) return t;
  t.merge(cal.cases);
  const OppositeSign s = cal.passing.front();
  const int N = ctx.config().N;
  const auto vs = ctx.v_basis();
  auto g = ctx.rng("opposite");
  for (int trial = 0; trial < 120; ++trial) {
    int k = static_cast<int>(pick(g, N + 1)), m = static_cast<int>(pick(g, N + 1));
    int l = static_cast<int>(pick(g, N + 1));
    VMatrix u = VMatrix::single(k, m, VAElement(vs[pick(g, vs.size())]));
    VMatrix v = VMatrix::single(m, l, VAElement(vs[pick(g, vs.size())]));
    VMatrix lhs = opposite_map(ctx.V(), diamond_VV(ctx.V(), u, v), s);
    VMatrix rhs = diamond_VV(ctx.V(), opposite_map(ctx.V(), v, s), opposite_map(ctx.V(), u, s));
    t.record(probe_equal(lhs, rhs, ctx.probe_family()), [&] {
      return Failure{"u=" + u.str() + " v=" + v.str(), lhs.str(), rhs.str()};
    });
  }
  return t;
}

inline Tally suite_reachability(const Context& ctx) {
  Tally t;
  const RunConfig& c = ctx.config();
  const int vw = std::min(c.max_v_weight, 2);
  std::vector<FockModule> sources = ctx.probes();
  std::vector<FockModule> targets;
  for (const auto& Y : ctx.intertwiners()) {
    sources.push_back(Y.source2());
    targets.push_back(Y.target());
  }
  auto check = [&](const FockModule& W, bool dual) {
    ReachabilityReport rep =
        reachability_closure(c.N, c.L_max, module_mode_operators(W, vw, c.L_max, dual));
    for (const auto& [lv, dim] : rep.dimension) {
      long got = static_cast<long>(rep.rank.at(lv));
      t.record(got == dim, [&] {
        return Failure{(dual ? "dual of " : "") + W.name() + " level " + std::to_string(lv),
                       std::to_string(got), std::to_string(dim)};
      });
    }
  };
  for (const auto& W : sources) check(W, false);
  for (const auto& W : targets) check(W, true);
  // injectivity witnesses
  for (const auto& Y : ctx.intertwiners()) {
    MapTable f = rho_N(Y, c.N);
    auto nz = nonzero_entry(f);
    t.record(nz.has_value(), [&] { return Failure{Y.name() + " table", "all zero", "a nonzero entry"}; });
    t.merge(modes_determined_by_table(Y, f));
    ReconstructedIntertwiner zero(zero_table(f));
    for (const auto& key : f.grid()) {
      Rational m = yf_mode_index(f, key.k, key.l, key.w1.weight());
      ModuleVector mode = intertwiner_Yk_mode(zero, 0, m, ModuleVector(key.w1), ModuleVector(key.w2));
      t.record(mode.is_zero(), [&] { return Failure{"zero table mode " + key.str(), mode.str(), "0"}; });
    }
  }
  return t;
}

struct SuiteReport {
  std::string name;
  Tally tally;
  double seconds = 0;
  std::optional<std::string> error;  // truncation overflow message
  bool passed() const { return !error && tally.ok() && tally.run > 0; }
};

inline const std::map<std::string, std::function<Tally(const Context&)>>& suite_table() {
  static const std::map<std::string, std::function<Tally(const Context&)>> table = {
      {"homomorphism", suite_homomorphism},
      {"unit", suite_unit},
      {"bimodule", suite_bimodule},
      {"three-forms", suite_three_forms},
      {"kernel", suite_kernel},
      {"omega-commutators", suite_omega_commutators},
      {"binomial-218", suite_binomial},
      {"conjugation", suite_conjugation},
      {"exp-L", suite_exp_L},
      {"roundtrip", suite_roundtrip},
      {"jacobi-cert", suite_jacobi_cert},
      {"L1-cert", suite_L1_cert},
      {"opposite", suite_opposite},
      {"reachability", suite_reachability}};
  return table;
}

inline SuiteReport run_suite(const std::string& name, const Context& ctx) {
  SuiteReport rep;
  rep.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    rep.tally = suite_table().at(name)(ctx);
  } catch (const TruncationOverflow& e) {
    rep.error = e.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

struct RunResult {
  std::vector<SuiteReport> suites;
  bool overflow() const {
    for (const auto& s : suites)
      if (s.error) return true;
    return false;
  }
  bool passed() const {
    for (const auto& s : suites)
      if (!s.passed()) return false;
    return true;
  }
};

// Suites run on up to `workers` threads; reports keep the requested order.
inline RunResult run_suites(const Context& ctx) {
  const auto names = ctx.config().selected_suites();
  RunResult res;
  res.suites.resize(names.size());
  const size_t workers = static_cast<size_t>(ctx.config().workers);
  for (size_t start = 0; start < names.size(); start += workers) {
    std::vector<std::future<SuiteReport>> batch;
    for (size_t i = start; i < std::min(names.size(), start + workers); ++i)
      batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                 run_suite, names[i], std::cref(ctx)));
    for (size_t i = 0; i < batch.size(); ++i) res.suites[start + i] = batch[i].get();
  }
  return res;
}

}  // namespace voamodes::verify
