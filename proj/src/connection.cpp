#include "isomono/connection.hpp"

#include <cmath>
#include <numeric>

namespace isomono {

int PoleStructure::total_finite_order() const { return std::accumulate(r.begin(), r.end(), 0); }

int genus(const PoleStructure& structure) { return structure.r_inf - 3 + structure.total_finite_order(); }

int ConnectionConfig::genus() const { return isomono::genus(structure); }

DeformationVector DeformationVector::zero(const ConnectionConfig& config) {
    DeformationVector a;
    const int r = config.r_inf();
    a.a_inf = {cvec(r, 0.0), cvec(r, 0.0)};
    for (int s = 0; s < config.n(); ++s) {
        const int rs = config.structure.r[s];
        a.a_X.push_back({cvec(rs, 0.0), cvec(rs, 0.0)});
    }
    a.a_pos.assign(config.n(), 0.0);
    return a;
}

int DeformationVector::dimension() const {
    int d = 0;
    for (int i = 0; i < 2; ++i) d += std::max<int>(0, (int)a_inf[i].size() - 1);
    for (const auto& pair : a_X)
        for (int i = 0; i < 2; ++i) d += std::max<int>(0, (int)pair[i].size() - 1);
    return d + static_cast<int>(a_pos.size());
}

DeformationVector& DeformationVector::operator+=(const DeformationVector& o) {
    for (int i = 0; i < 2; ++i)
        for (size_t k = 0; k < a_inf[i].size(); ++k) a_inf[i][k] += o.a_inf[i][k];
    for (size_t s = 0; s < a_X.size(); ++s)
        for (int i = 0; i < 2; ++i)
            for (size_t k = 0; k < a_X[s][i].size(); ++k) a_X[s][i][k] += o.a_X[s][i][k];
    for (size_t s = 0; s < a_pos.size(); ++s) a_pos[s] += o.a_pos[s];
    return *this;
}

DeformationVector& DeformationVector::operator*=(cplx c) {
    for (auto& v : a_inf)
        for (auto& x : v) x *= c;
    for (auto& pair : a_X)
        for (auto& v : pair)
            for (auto& x : v) x *= c;
    for (auto& x : a_pos) x *= c;
    return *this;
}

DeformationVector operator+(DeformationVector a, const DeformationVector& b) { return a += b; }
DeformationVector operator*(cplx s, DeformationVector a) { return a *= s; }

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ValidationReport validate(const ConnectionConfig& config, const Tolerances& tol) {
    ValidationReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.failures.push_back(std::move(msg));
    };
    const PoleStructure& ps = config.structure;
    if (ps.r_inf < 1) fail("pole order at infinity must be at least 1");
    if (ps.X.size() != ps.r.size()) fail("pole positions and orders differ in length");
    for (int s = 0; s < ps.n(); ++s)
        if (ps.r[s] < 1) fail("finite pole order must be at least 1 (pole " + std::to_string(s + 1) + ")");
    if (!rep.ok) return rep;
    if (genus(ps) <= 0) fail("genus not positive");
    for (int s = 0; s < ps.n(); ++s)
        for (int u = s + 1; u < ps.n(); ++u)
            if (std::abs(ps.X[s] - ps.X[u]) <= tol.sep) fail("poles not distinct");

    bool shapes_ok = true;
    for (int i = 0; i < 2; ++i)
        if ((int)config.t_inf[i].size() != ps.r_inf) shapes_ok = false;
    if ((int)config.t_X.size() != ps.n()) shapes_ok = false;
    else
        for (int s = 0; s < ps.n(); ++s)
            for (int i = 0; i < 2; ++i)
                if ((int)config.t_X[s][i].size() != ps.r[s]) shapes_ok = false;
    if (!shapes_ok) {
        fail("time lists do not match pole orders");
        return rep;
    }

    bool all_finite = finite(config.hbar);
    for (cplx x : ps.X) all_finite = all_finite && finite(x);
    for (int i = 0; i < 2; ++i)
        for (cplx t : config.t_inf[i]) all_finite = all_finite && finite(t);
    for (const auto& pair : config.t_X)
        for (int i = 0; i < 2; ++i)
            for (cplx t : pair[i]) all_finite = all_finite && finite(t);
    if (!all_finite) fail("non-finite value in configuration");

    if (std::abs(config.delta_inf(ps.r_inf - 1)) <= tol.sep) fail("ramified pole at infinity");
    for (int s = 0; s < ps.n(); ++s)
        if (std::abs(config.delta_X(s, ps.r[s] - 1)) <= tol.sep)
            fail("ramified pole at X_" + std::to_string(s + 1));

    cplx residue_sum = config.t_inf[0][0] + config.t_inf[1][0];
    for (int s = 0; s < ps.n(); ++s) residue_sum += config.t_X[s][0][0] + config.t_X[s][1][0];
    if (std::abs(residue_sum) >= tol.res) {
        std::string msg = "SumResidues: monodromy exponents do not sum to zero";
        if (config.enforce_residue_sum) fail(msg);
        else rep.warnings.push_back(msg);
    }
    return rep;
}

ValidationReport validate_state(const ConnectionConfig& config, const DarbouxState& state, const Tolerances& tol) {
    ValidationReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.failures.push_back(std::move(msg));
    };
    if (state.q.size() != state.p.size()) fail("q and p differ in length");
    if (state.size() != config.genus()) fail("state size differs from the genus");
    for (int i = 0; i < state.size(); ++i) {
        if (!finite(state.q[i]) || (i < (int)state.p.size() && !finite(state.p[i]))) fail("non-finite state entry");
        for (int j = i + 1; j < state.size(); ++j)
            if (std::abs(state.q[i] - state.q[j]) <= tol.sep) fail("nodes not distinct");
        for (cplx x : config.structure.X)
            if (std::abs(state.q[i] - x) <= tol.sep) fail("node coincides with a pole");
    }
    return rep;
}

void require_valid(const ConnectionConfig& config, const DarbouxState& state, const Tolerances& tol) {
    ValidationReport a = validate(config, tol);
    ValidationReport b = validate_state(config, state, tol);
    std::string msg;
    for (const auto& f : a.failures) msg += f + "; ";
    for (const auto& f : b.failures) msg += f + "; ";
    if (!msg.empty()) throw ValidationError(msg);
}

RationalFunction compute_P1(const ConnectionConfig& config) {
    RationalFunction f;
    const int r = config.r_inf();
    for (int k = 0; k <= r - 2; ++k) {
        if ((int)f.poly.size() <= k) f.poly.resize(k + 1, 0.0);
        f.poly[k] = -(config.t_inf[0][k + 1] + config.t_inf[1][k + 1]);
    }
    for (int s = 0; s < config.n(); ++s)
        for (int k = 1; k <= config.structure.r[s]; ++k)
            f.add_pole_term(config.structure.X[s], k, config.t_X[s][0][k - 1] + config.t_X[s][1][k - 1]);
    return f.trim(0.0);
}

cplx p2_coefficient_at_infinity(const ConnectionConfig& config, int j) {
    const int r = config.r_inf();
    const int k = 2 * r - 4 - j;
    if (j < 0 || k < 0 || k > r - 1) return 0.0;
    cplx acc = 0.0;
    for (int i = 0; i <= k; ++i) acc += config.t_inf[0][r - 1 - i] * config.t_inf[1][r - 1 - (k - i)];
    return acc;
}

cplx p2_coefficient_at_pole(const ConnectionConfig& config, int s, int j) {
    const int rs = config.structure.r[s];
    const int k = 2 * rs - j;
    if (k < 0 || k > rs - 1) return 0.0;
    cplx acc = 0.0;
    for (int i = 0; i <= k; ++i) acc += config.t_X[s][0][rs - 1 - i] * config.t_X[s][1][rs - 1 - (k - i)];
    return acc;
}

RationalFunction compute_P2_tilde(const ConnectionConfig& config) {
    RationalFunction f;
    const int r = config.r_inf();
    for (int j = std::max(0, r - 3); j <= 2 * r - 4; ++j) {
        if ((int)f.poly.size() <= j) f.poly.resize(j + 1, 0.0);
        f.poly[j] = p2_coefficient_at_infinity(config, j);
    }
    for (int s = 0; s < config.n(); ++s) {
        const int rs = config.structure.r[s];
        for (int j = rs + 1; j <= 2 * rs; ++j) f.add_pole_term(config.structure.X[s], j, p2_coefficient_at_pole(config, s, j));
    }
    return f.trim(0.0);
}

RationalFunction pole_product(const ConnectionConfig& config) {
    cvec roots;
    for (int s = 0; s < config.n(); ++s)
        for (int m = 0; m < config.structure.r[s]; ++m) roots.push_back(config.structure.X[s]);
    return RationalFunction::from_roots(roots);
}

RationalFunction node_product(const DarbouxState& state) { return RationalFunction::from_roots(state.q); }

ConnectionConfig advance_times(const ConnectionConfig& config, const DeformationVector& alpha, cplx eps) {
    ConnectionConfig c = config;
    for (int i = 0; i < 2; ++i)
        for (int k = 1; k < c.r_inf(); ++k) c.t_inf[i][k] += eps * alpha.a_inf[i][k];
    for (int s = 0; s < c.n(); ++s) {
        for (int i = 0; i < 2; ++i)
            for (int k = 1; k < c.structure.r[s]; ++k) c.t_X[s][i][k] += eps * alpha.a_X[s][i][k];
        c.structure.X[s] += eps * alpha.a_pos[s];
    }
    return c;
}

ConnectionConfig swap_sheets(const ConnectionConfig& config) {
    ConnectionConfig c = config;
    std::swap(c.t_inf[0], c.t_inf[1]);
    for (auto& pair : c.t_X) std::swap(pair[0], pair[1]);
    return c;
}

}  // namespace isomono
