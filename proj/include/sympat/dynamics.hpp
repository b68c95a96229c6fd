#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace sympat {

enum class DynamicsKind { Continuous, Discrete };

// Local controller v(x) added to the intrinsic field to form the closed
// loop f(t,x) + v(x).
struct ControlLaw {
    std::string name;
    std::map<std::string, double> params;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> law;
};

// v(x) = alpha*x - beta*x^3, componentwise.
ControlLaw pitchfork_control(double alpha = 5.0, double beta = 1.0);
ControlLaw make_control_law(const std::string& name, const std::map<std::string, double>& params);

// A named node vector field (or discrete map) with parameters and an
// optional local controller. Immutable after construction; eval is pure.
class NodeDynamics {
public:
    NodeDynamics();  // zero(1) placeholder

    // f(t,x) + v(x) when a controller is attached, else f(t,x). For
    // kind Discrete the value is the next-state map f(t, x(t)).
    Eigen::VectorXd eval(double t, const Eigen::VectorXd& x) const;

    int state_dim() const { return dim_; }
    DynamicsKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }

    bool has_controller() const { return controller_.has_value(); }
    const ControlLaw& controller() const { return *controller_; }
    NodeDynamics with_controller(ControlLaw v) const;

    // LTI entries expose (A, B, K); their network coupling goes through
    // the gain matrix BK instead of k*I.
    bool is_linear() const { return linear_; }
    bool uses_bk_coupling() const { return bk_coupling_; }
    const Eigen::MatrixXd& A() const;
    const Eigen::MatrixXd& B() const;
    const Eigen::MatrixXd& K() const;

    static NodeDynamics fitzhugh_nagumo(double a = 0.0, double b = 0.8, double c = 3.0,
                                        double i_const = 0.0);
    static NodeDynamics integrator_chain(int n);
    static NodeDynamics integrator_chain(int n, const Eigen::MatrixXd& k_gain);
    static NodeDynamics simple_integrator(DynamicsKind kind = DynamicsKind::Continuous);
    static NodeDynamics harmonic(double omega = 1.0);
    static NodeDynamics lti(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                            const Eigen::MatrixXd& k);
    static NodeDynamics zero(int n);

    // Registry lookup used by scenario files. Throws on unknown names.
    static NodeDynamics from_name(const std::string& name,
                                  const std::map<std::string, double>& params,
                                  DynamicsKind kind = DynamicsKind::Continuous);

private:
    std::string name_;
    int dim_ = 0;
    DynamicsKind kind_ = DynamicsKind::Continuous;
    std::map<std::string, double> params_;
    std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> field_;
    std::optional<ControlLaw> controller_;
    bool linear_ = false;
    bool bk_coupling_ = false;
    Eigen::MatrixXd a_, b_, k_;

    friend NodeDynamics make_dynamics_impl(std::string, int, DynamicsKind,
                                           std::map<std::string, double>,
                                           std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>);
};

}  // namespace sympat
