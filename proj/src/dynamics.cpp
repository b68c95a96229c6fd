#include "sympat/dynamics.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace sympat {

namespace {

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::string& owner, const std::map<std::string, double>& params,
                    const std::set<std::string>& known) {
    for (const auto& [key, value] : params) {
        (void)value;
        if (!known.count(key))
            throw std::invalid_argument(owner + ": unknown parameter '" + key + "'");
    }
}

}  // namespace

ControlLaw pitchfork_control(double alpha, double beta) {
    ControlLaw v;
    v.name = "pitchfork";
    v.params = {{"alpha", alpha}, {"beta", beta}};
    v.law = [alpha, beta](const Eigen::VectorXd& x) {
        return (alpha * x.array() - beta * x.array().cube()).matrix().eval();
    };
    return v;
}

ControlLaw make_control_law(const std::string& name, const std::map<std::string, double>& params) {
    if (name == "pitchfork") {
        reject_unknown("controller pitchfork", params, {"alpha", "beta"});
        return pitchfork_control(param_or(params, "alpha", 5.0), param_or(params, "beta", 1.0));
    }
    throw std::invalid_argument("controller: unknown law '" + name + "'");
}

NodeDynamics make_dynamics_impl(std::string name, int dim, DynamicsKind kind,
                                std::map<std::string, double> params,
                                std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> field);

NodeDynamics make_dynamics_impl(std::string name, int dim, DynamicsKind kind,
                                std::map<std::string, double> params,
                                std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> field) {
    NodeDynamics d;
    d.name_ = std::move(name);
    d.dim_ = dim;
    d.kind_ = kind;
    d.params_ = std::move(params);
    d.field_ = std::move(field);
    return d;
}

NodeDynamics::NodeDynamics()
    : name_("zero"),
      dim_(1),
      field_([](double, const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(1).eval(); }) {}

Eigen::VectorXd NodeDynamics::eval(double t, const Eigen::VectorXd& x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("dynamics " + name_ + ": state size " +
                                    std::to_string(x.size()) + " != " + std::to_string(dim_));
    Eigen::VectorXd out = field_(t, x);
    if (controller_) out += controller_->law(x);
    return out;
}

NodeDynamics NodeDynamics::with_controller(ControlLaw v) const {
    NodeDynamics copy = *this;
    copy.controller_ = std::move(v);
    return copy;
}

const Eigen::MatrixXd& NodeDynamics::A() const {
    if (!linear_) throw std::logic_error("dynamics " + name_ + ": no state matrix");
    return a_;
}

const Eigen::MatrixXd& NodeDynamics::B() const {
    if (!bk_coupling_) throw std::logic_error("dynamics " + name_ + ": no input matrix");
    return b_;
}

const Eigen::MatrixXd& NodeDynamics::K() const {
    if (!bk_coupling_) throw std::logic_error("dynamics " + name_ + ": no gain matrix");
    return k_;
}

NodeDynamics NodeDynamics::fitzhugh_nagumo(double a, double b, double c, double i_const) {
    auto field = [a, b, c, i_const](double, const Eigen::VectorXd& x) {
        Eigen::VectorXd dx(2);
        const double v = x[0], w = x[1];
        dx[0] = c * (v + w - v * v * v / 3.0 + i_const);
        dx[1] = -(v - a + b * w) / c;
        return dx;
    };
    return make_dynamics_impl("fitzhugh_nagumo", 2, DynamicsKind::Continuous,
                              {{"a", a}, {"b", b}, {"c", c}, {"I", i_const}}, std::move(field));
}

NodeDynamics NodeDynamics::integrator_chain(int n) {
    if (n < 1) throw std::invalid_argument("integrator_chain: order must be positive");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
    NodeDynamics d = make_dynamics_impl(
        "integrator_chain", n, DynamicsKind::Continuous,
        {{"n", static_cast<double>(n)}},
        [a](double, const Eigen::VectorXd& x) { return (a * x).eval(); });
    d.linear_ = true;
    d.a_ = a;
    return d;
}

NodeDynamics NodeDynamics::integrator_chain(int n, const Eigen::MatrixXd& k_gain) {
    if (k_gain.rows() != 1 || k_gain.cols() != n)
        throw std::invalid_argument("integrator_chain: gain must be 1 x n");
    NodeDynamics d = integrator_chain(n);
    d.bk_coupling_ = true;
    d.b_ = Eigen::MatrixXd::Zero(n, 1);
    d.b_(n - 1, 0) = 1.0;
    d.k_ = k_gain;
    return d;
}

NodeDynamics NodeDynamics::simple_integrator(DynamicsKind kind) {
    NodeDynamics d;
    if (kind == DynamicsKind::Continuous) {
        // xdot = u: the intrinsic field is zero, motion comes from coupling
        d = make_dynamics_impl("integrator", 1, kind, {},
                               [](double, const Eigen::VectorXd& x) {
                                   return Eigen::VectorXd::Zero(x.size()).eval();
                               });
    } else {
        // x(t+1) = x(t) + u(t), so the map part is the identity
        d = make_dynamics_impl("integrator", 1, kind, {},
                               [](double, const Eigen::VectorXd& x) { return x; });
    }
    d.linear_ = true;
    d.a_ = kind == DynamicsKind::Continuous ? Eigen::MatrixXd::Zero(1, 1).eval()
                                            : Eigen::MatrixXd::Identity(1, 1).eval();
    return d;
}

NodeDynamics NodeDynamics::harmonic(double omega) {
    Eigen::MatrixXd a(2, 2);
    a << 0.0, -omega, omega, 0.0;
    NodeDynamics d = make_dynamics_impl(
        "harmonic", 2, DynamicsKind::Continuous, {{"omega", omega}},
        [a](double, const Eigen::VectorXd& x) { return (a * x).eval(); });
    d.linear_ = true;
    d.a_ = a;
    return d;
}

NodeDynamics NodeDynamics::lti(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                               const Eigen::MatrixXd& k) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw std::invalid_argument("lti: A must be square and nonempty");
    if (b.rows() != a.rows()) throw std::invalid_argument("lti: B rows must match A");
    if (k.rows() != b.cols() || k.cols() != a.cols())
        throw std::invalid_argument("lti: K must be B.cols x A.cols");
    NodeDynamics d = make_dynamics_impl(
        "lti", static_cast<int>(a.rows()), DynamicsKind::Continuous, {},
        [a](double, const Eigen::VectorXd& x) { return (a * x).eval(); });
    d.linear_ = true;
    d.bk_coupling_ = true;
    d.a_ = a;
    d.b_ = b;
    d.k_ = k;
    return d;
}

NodeDynamics NodeDynamics::zero(int n) {
    if (n < 1) throw std::invalid_argument("zero dynamics: dimension must be positive");
    return make_dynamics_impl("zero", n, DynamicsKind::Continuous,
                              {{"n", static_cast<double>(n)}},
                              [n](double, const Eigen::VectorXd&) {
                                  return Eigen::VectorXd::Zero(n).eval();
                              });
}

NodeDynamics NodeDynamics::from_name(const std::string& name,
                                     const std::map<std::string, double>& params,
                                     DynamicsKind kind) {
    if (name == "fitzhugh_nagumo") {
        reject_unknown(name, params, {"a", "b", "c", "I"});
        if (kind != DynamicsKind::Continuous)
            throw std::invalid_argument("fitzhugh_nagumo: continuous-time only");
        return fitzhugh_nagumo(param_or(params, "a", 0.0), param_or(params, "b", 0.8),
                               param_or(params, "c", 3.0), param_or(params, "I", 0.0));
    }
    if (name == "harmonic") {
        reject_unknown(name, params, {"omega"});
        if (kind != DynamicsKind::Continuous)
            throw std::invalid_argument("harmonic: continuous-time only");
        return harmonic(param_or(params, "omega", 1.0));
    }
    if (name == "integrator") {
        reject_unknown(name, params, {});
        return simple_integrator(kind);
    }
    if (name == "integrator_chain") {
        reject_unknown(name, params, {"n"});
        if (kind != DynamicsKind::Continuous)
            throw std::invalid_argument("integrator_chain: continuous-time only");
        return integrator_chain(static_cast<int>(param_or(params, "n", 2.0)));
    }
    if (name == "zero") {
        reject_unknown(name, params, {"n"});
        NodeDynamics d = zero(static_cast<int>(param_or(params, "n", 1.0)));
        d.kind_ = kind;
        return d;
    }
    throw std::invalid_argument("dynamics: unknown family '" + name + "'");
}

}  // namespace sympat
