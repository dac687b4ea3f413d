// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include "calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <Eigen/Geometry>

namespace uws {

namespace {

Mat3 rotation_increment(const Vec3& w) {
  const double theta = w.norm();
  if (theta == 0.0) return Mat3::Identity();
  return Eigen::AngleAxisd(theta, w / theta).toRotationMatrix();
}

// Maps a parameter increment (around zero) onto a rig + board-pose state.
struct Parameterization {
  FreeParams free;
  int view_count = 0;
  Vec3 tilt_e1 = Vec3::UnitX();  // basis orthogonal to the current normal
  Vec3 tilt_e2 = Vec3::UnitY();

  int size() const { return free.count(view_count); }

  void refresh_tilt_basis(const StereoRig& rig) {
    const Vec3& n = rig.port.normal;
    const Vec3 seed = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    tilt_e1 = (seed - seed.dot(n) * n).normalized();
    tilt_e2 = n.cross(tilt_e1);
  }

  void apply(const Eigen::VectorXd& delta, StereoRig& rig,
             std::vector<PlanePose>& poses) const {
    int i = 0;
    if (free.port_offset) rig.port.inner_offset += delta[i++];
    if (free.port_tilt) {
      const Vec3 axis = delta[i] * tilt_e1 + delta[i + 1] * tilt_e2;
      rig.port.normal = (rotation_increment(axis) * rig.port.normal).normalized();
      i += 2;
    }
    if (free.thickness) rig.port.thickness += delta[i++];
    if (free.n_water) rig.media.n_water += delta[i++];
    if (free.board_poses) {
      for (PlanePose& pose : poses) {
        const Vec3 w(delta[i], delta[i + 1], delta[i + 2]);
        const Vec3 t(delta[i + 3], delta[i + 4], delta[i + 5]);
        pose.rotation = rotation_increment(w) * pose.rotation;
        pose.translation += t;
        i += 6;
      }
    }
  }

  // Finite-difference step per parameter: 1e-7 relative to the parameter's
  // natural scale with a 1e-9 absolute floor. Rotation/translation increments
  // live on a unit scale.
  double fd_step(int index, const StereoRig& rig) const {
    int i = 0;
    auto rel = [](double value) {
      return std::max(1e-7 * std::max(std::abs(value), 1.0), 1e-9);
    };
    if (free.port_offset) {
      if (index == i) return rel(rig.port.inner_offset);
      ++i;
    }
    if (free.port_tilt) {
      if (index < i + 2) return 1e-7;
      i += 2;
    }
    if (free.thickness) {
      if (index == i) return rel(rig.port.thickness);
      ++i;
    }
    if (free.n_water) {
      if (index == i) return rel(rig.media.n_water);
      ++i;
    }
    return 1e-7;  // board pose increments
  }
};

struct State {
  StereoRig rig;
  std::vector<PlanePose> poses;
};

// Feasible box keeping the Fermat solve well conditioned: sub-0.1 mm glass
// and non-physical water indices are out of bounds.
constexpr double kMinThickness = 1e-4;

// Strict evaluation for finite differences: out-of-bounds states throw so
// the caller can fall back to a one-sided difference.
Eigen::VectorXd eval_strict(const Parameterization& par, const State& state,
                            const Eigen::VectorXd& delta,
                            const std::vector<CornerObservation>& observations) {
  State trial = state;
  par.apply(delta, trial.rig, trial.poses);
  const StereoRig& rig = trial.rig;
  if (!(rig.port.thickness >= kMinThickness) ||
      !(rig.media.n_water >= 1.0 && rig.media.n_water <= 2.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "state left the physical parameter range");
  }
  rig.validate();
  return reprojection_residuals(trial.rig, trial.poses, observations);
}

// Trial-step evaluation: the state is projected onto the feasible box, so a
// step may pin a parameter to its bound while the others keep moving.
State apply_projected(const Parameterization& par, const State& state,
                      const Eigen::VectorXd& delta) {
  State trial = state;
  par.apply(delta, trial.rig, trial.poses);
  trial.rig.port.thickness = std::max(trial.rig.port.thickness, kMinThickness);
  trial.rig.media.n_water = std::clamp(trial.rig.media.n_water, 1.0, 2.0);
  trial.rig.validate();
  return trial;
}

}  // namespace

Eigen::VectorXd reprojection_residuals(
    const StereoRig& rig, const std::vector<PlanePose>& board_poses,
    const std::vector<CornerObservation>& observations) {
  Eigen::VectorXd residuals(2 * static_cast<int>(observations.size()));
  for (std::size_t k = 0; k < observations.size(); ++k) {
    const CornerObservation& obs = observations[k];
    if (obs.view_id < 0 ||
        obs.view_id >= static_cast<int>(board_poses.size())) {
      std::ostringstream oss;
      oss << "observation " << k << " references unknown view "
          << obs.view_id;
      throw Error(ErrorCode::InvalidArgument, oss.str());
    }
    const Vec3 point_world =
        board_poses[obs.view_id].to_world(obs.board_point);
    ProjectedPixel proj;
    try {
      proj = forward_project(rig, obs.camera, point_world);
    } catch (const Error& err) {
      std::ostringstream oss;
      oss << "observation " << k << " failed to project: " << err.what();
      throw Error(err.code(), oss.str());
    }
    residuals[2 * k] = proj.pixel.x() - obs.pixel.x();
    residuals[2 * k + 1] = proj.pixel.y() - obs.pixel.y();
  }
  return residuals;
}

CalibrationReport calibrate(const CalibrationProblem& problem,
                            const CalibrationOptions& options) {
  const int view_count = static_cast<int>(problem.board_poses0.size());
  Parameterization par;
  par.free = problem.free_params;
  par.view_count = view_count;

  const int param_count = par.size();
  const int residual_count = 2 * static_cast<int>(problem.observations.size());
  if (param_count == 0) {
    throw Error(ErrorCode::InvalidArgument, "no free parameters selected");
  }
  if (residual_count < param_count + 6) {
    std::ostringstream oss;
    oss << "underdetermined problem: " << residual_count << " residuals for "
        << param_count << " parameters";
    throw Error(ErrorCode::SingularNormalEquations, oss.str());
  }

  State state{problem.rig0, problem.board_poses0};
  Eigen::VectorXd residuals =
      reprojection_residuals(state.rig, state.poses, problem.observations);
  double cost = 0.5 * residuals.squaredNorm();
  const auto rms = [&](const Eigen::VectorXd& r) {
    return std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
  };

  CalibrationReport report;
  report.initial_rms_px = rms(residuals);

  double damping = options.initial_damping;
  bool converged = false;
  int iter = 0;
  Eigen::MatrixXd jacobian(residual_count, param_count);
  Eigen::MatrixXd jtj;

  for (; iter < options.max_iters; ++iter) {
    par.refresh_tilt_basis(state.rig);
    // Central finite differences around the current state (delta = 0). When
    // one side is unevaluable (iterate sits on a physical bound), the column
    // falls back to the one-sided difference.
    for (int j = 0; j < param_count; ++j) {
      const double h = par.fd_step(j, state.rig);
      Eigen::VectorXd delta = Eigen::VectorXd::Zero(param_count);
      std::optional<Eigen::VectorXd> plus, minus;
      try {
        delta[j] = h;
        plus = eval_strict(par, state, delta, problem.observations);
      } catch (const Error&) {
      }
      try {
        delta[j] = -h;
        minus = eval_strict(par, state, delta, problem.observations);
      } catch (const Error&) {
      }
      if (plus && minus) {
        jacobian.col(j) = (*plus - *minus) / (2.0 * h);
      } else if (plus) {
        jacobian.col(j) = (*plus - residuals) / h;
      } else if (minus) {
        jacobian.col(j) = (residuals - *minus) / h;
      } else {
        throw Error(ErrorCode::ConvergenceFailure,
                    "cannot differentiate around the current iterate");
      }
    }
    const Eigen::VectorXd gradient = jacobian.transpose() * residuals;
    if (gradient.lpNorm<Eigen::Infinity>() < options.gradient_tol) {
      converged = true;
      break;
    }
    jtj = jacobian.transpose() * jacobian;
    const double max_diag = jtj.diagonal().maxCoeff();
    if (!(max_diag > 0.0) ||
        jtj.diagonal().minCoeff() < 1e-14 * max_diag) {
      throw Error(ErrorCode::SingularNormalEquations,
                  "normal equations are rank deficient");
    }

    bool accepted = false;
    Eigen::VectorXd step;
    for (int attempt = 0; attempt < 30 && !accepted; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal() += damping * jtj.diagonal();
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(damped);
      step = ldlt.solve(-gradient);
      if (!step.allFinite() ||
          (damped * step + gradient).norm() > 1e-8 * gradient.norm()) {
        throw Error(ErrorCode::SingularNormalEquations,
                    "normal-equation solve failed");
      }
      double trial_cost = std::numeric_limits<double>::infinity();
      State trial_state;
      Eigen::VectorXd trial_residuals;
      try {
        trial_state = apply_projected(par, state, step);
        trial_residuals = reprojection_residuals(
            trial_state.rig, trial_state.poses, problem.observations);
        trial_cost = 0.5 * trial_residuals.squaredNorm();
      } catch (const Error&) {
        // Step walked into an invalid configuration; treat as rejected.
      }
      if (trial_cost < cost) {
        state = std::move(trial_state);
        residuals = std::move(trial_residuals);
        cost = trial_cost;
        damping = std::max(damping / 3.0, 1e-14);
        accepted = true;
      } else {
        damping *= 10.0;
      }
    }
    if (!accepted) {
      // Even heavily damped gradient steps cannot lower the cost: the
      // iterate is stationary at the resolution of the objective.
      converged = true;
      break;
    }
    if (accepted && step.lpNorm<Eigen::Infinity>() < options.step_tol) {
      converged = true;
      ++iter;
      break;
    }
  }

  report.rig = state.rig;
  report.board_poses = state.poses;
  report.rms_px = rms(residuals);
  report.iterations = iter;
  report.converged = converged;

  // 1-sigma estimates from the unscaled normal-equations inverse diagonal.
  if (jtj.size() > 0) {
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(jtj);
    const Eigen::MatrixXd cov =
        ldlt.solve(Eigen::MatrixXd::Identity(param_count, param_count));
    report.per_parameter_sigma.resize(param_count);
    for (int j = 0; j < param_count; ++j) {
      report.per_parameter_sigma[j] =
          report.rms_px * std::sqrt(std::max(cov(j, j), 0.0));
    }
  }
  return report;
}

}  // namespace uws
