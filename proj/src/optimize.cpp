// Copyright 2026 The fermiproc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fermiproc/optimize.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

namespace fermiproc {

namespace {

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
using GslVector = std::unique_ptr<gsl_vector, VectorDeleter>;

GslVector make_vector(const std::vector<double>& x) {
  GslVector v(gsl_vector_alloc(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) gsl_vector_set(v.get(), i, x[i]);
  return v;
}

std::vector<double> to_std(const gsl_vector* v) {
  std::vector<double> x(v->size);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = gsl_vector_get(v, i);
  return x;
}

struct Context {
  const Objective* f = nullptr;
  double fd_step = 1e-6;
  int evaluations = 0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;

  double eval(const std::vector<double>& x) {
    double v = (*f)(x);
    if (!std::isfinite(v)) throw std::runtime_error("objective returned a non-finite value");
    ++evaluations;
    if (v < best) {
      best = v;
      best_x = x;
    }
    return v;
  }

  void gradient(std::vector<double> x, gsl_vector* g) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      double xi = x[i];
      x[i] = xi + fd_step;
      double fp = eval(x);
      x[i] = xi - fd_step;
      double fm = eval(x);
      x[i] = xi;
      gsl_vector_set(g, i, (fp - fm) / (2.0 * fd_step));
    }
  }
};

double f_cb(const gsl_vector* v, void* p) { return static_cast<Context*>(p)->eval(to_std(v)); }
void df_cb(const gsl_vector* v, void* p, gsl_vector* g) { static_cast<Context*>(p)->gradient(to_std(v), g); }
void fdf_cb(const gsl_vector* v, void* p, double* f, gsl_vector* g) {
  auto* c = static_cast<Context*>(p);
  *f = c->eval(to_std(v));
  c->gradient(to_std(v), g);
}

// One simplex run; returns true on convergence.
bool run_simplex(Context& ctx, const std::vector<double>& x0, const std::vector<double>& steps,
                 const MinimizeOptions& opt, std::vector<double>& trace) {
  const std::size_t n = x0.size();
  gsl_multimin_function fn{&f_cb, n, &ctx};
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n), &gsl_multimin_fminimizer_free);
  GslVector x = make_vector(x0);
  GslVector ss = make_vector(steps);
  gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), ss.get());
  while (ctx.evaluations < opt.max_evaluations) {
    int status = gsl_multimin_fminimizer_iterate(s.get());
    trace.push_back(ctx.best);
    if (status != GSL_SUCCESS) return false;
    double size = gsl_multimin_fminimizer_size(s.get());
    if (gsl_multimin_test_size(size, opt.size_tolerance) == GSL_SUCCESS) return true;
  }
  return false;
}

bool run_bfgs(Context& ctx, const std::vector<double>& x0, const MinimizeOptions& opt, std::vector<double>& trace) {
  const std::size_t n = x0.size();
  gsl_multimin_function_fdf fn{&f_cb, &df_cb, &fdf_cb, n, &ctx};
  std::unique_ptr<gsl_multimin_fdfminimizer, decltype(&gsl_multimin_fdfminimizer_free)> s(
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n), &gsl_multimin_fdfminimizer_free);
  GslVector x = make_vector(x0);
  gsl_multimin_fdfminimizer_set(s.get(), &fn, x.get(), opt.initial_step, 0.1);
  while (ctx.evaluations < opt.max_evaluations) {
    int status = gsl_multimin_fdfminimizer_iterate(s.get());
    trace.push_back(ctx.best);
    if (gsl_multimin_test_gradient(s->gradient, opt.gradient_tolerance) == GSL_SUCCESS) return true;
    if (status != GSL_SUCCESS) return false;
  }
  return false;
}

}  // namespace

MinimizeResult minimize(const Objective& f, std::vector<double> x0, const MinimizeOptions& options) {
  if (!(options.initial_step > 0.0)) throw std::invalid_argument("initial step must be positive");
  if (options.max_evaluations < 1) throw std::invalid_argument("evaluation budget must be positive");
  if (options.restarts < 0) throw std::invalid_argument("restart count must be non-negative");
  gsl_error_handler_t* old = gsl_set_error_handler_off();

  Context ctx;
  ctx.f = &f;
  ctx.fd_step = options.fd_step;
  MinimizeResult res;
  if (x0.empty()) {
    res.f = ctx.eval(x0);
    res.converged = true;
    res.evaluations = ctx.evaluations;
    gsl_set_error_handler(old);
    return res;
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> scale(0.5, 1.5);
  std::vector<double> start = std::move(x0);
  std::vector<double> steps(start.size(), options.initial_step);
  bool converged = false;
  try {
    for (int run = 0; run <= options.restarts; ++run) {
      if (ctx.evaluations >= options.max_evaluations) break;
      converged = options.method == MinimizeMethod::kNelderMead ? run_simplex(ctx, start, steps, options, res.trace)
                                                                 : run_bfgs(ctx, start, options, res.trace);
      start = ctx.best_x;
      for (double& s : steps) s = options.initial_step * scale(rng);
    }
  } catch (...) {
    gsl_set_error_handler(old);
    throw;
  }
  gsl_set_error_handler(old);

  res.x = ctx.best_x;
  res.f = ctx.best;
  res.evaluations = ctx.evaluations;
  res.converged = converged;
  res.budget_exhausted = ctx.evaluations >= options.max_evaluations;
  return res;
}

}  // namespace fermiproc
