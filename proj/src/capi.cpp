// Copyright 2026 The purify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "purify/purify.h"

#include <cstring>
#include <iostream>
#include <memory>
#include <mutex>
#include <new>
#include <streambuf>
#include <string>

#include "purify/circuit.hpp"
#include "purify/clifford.hpp"
#include "purify/config.hpp"
#include "purify/error.hpp"
#include "purify/observables.hpp"
#include "purify/pipeline.hpp"
#include "purify/rng.hpp"
#include "purify/tableau.hpp"

struct purify_rng {
  purify::Rng rng;
};

struct purify_tableau {
  purify::MixedTableau state;
};

namespace {

thread_local std::string last_error;

std::mutex log_mutex;
purify_log_fn log_fn = nullptr;
void* log_user = nullptr;

void emit(const std::string& line) {
  std::lock_guard<std::mutex> lock(log_mutex);
  if (log_fn) {
    log_fn(line.c_str(), log_user);
  } else {
    std::cerr << line << '\n';
  }
}

// Forwards complete lines to the log sink and remembers the last error line.
class LineBuf : public std::streambuf {
 public:
  ~LineBuf() override { flush_line(); }
  const std::string& error() const { return error_; }

 protected:
  int_type overflow(int_type ch) override {
    if (ch == traits_type::eof()) return traits_type::not_eof(ch);
    if (ch == '\n') {
      flush_line();
    } else {
      line_.push_back(static_cast<char>(ch));
    }
    return ch;
  }

 private:
  void flush_line() {
    if (line_.empty()) return;
    if (line_.rfind("error: ", 0) == 0) error_ = line_.substr(7);
    emit(line_);
    line_.clear();
  }
  std::string line_;
  std::string error_;
};

template <class F>
purify_status run_command(F&& body) {
  last_error.clear();
  LineBuf buf;
  std::ostream log(&buf);
  int code = purify::kExitRuntime;
  try {
    code = body(log);
  } catch (const purify::ValidationError& e) {
    log << "error: " << e.what() << '\n';
    code = purify::kExitValidation;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
  }
  log.flush();
  buf.pubsync();
  last_error = buf.error();
  return static_cast<purify_status>(code);
}

template <class F>
purify_status guard(F&& body) {
  last_error.clear();
  try {
    body();
    return PURIFY_OK;
  } catch (const purify::ValidationError& e) {
    last_error = e.what();
    return PURIFY_ERR_VALIDATION;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PURIFY_ERR_RUNTIME;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PURIFY_ERR_RUNTIME;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw purify::ValidationError(std::string(what) + ": null pointer");
}

std::string str_or(const char* s, const char* fallback) { return s ? std::string(s) : std::string(fallback); }

}  // namespace

extern "C" {

const char* purify_version(void) {
  static const std::string v = purify::tool_version();
  return v.c_str();
}

const char* purify_last_error(void) { return last_error.c_str(); }

void purify_set_log_callback(purify_log_fn fn, void* user) {
  std::lock_guard<std::mutex> lock(log_mutex);
  log_fn = fn;
  log_user = user;
}

purify_status purify_rng_new(uint64_t seed, purify_rng** out) {
  return guard([&] {
    need(out, "out");
    *out = new purify_rng{purify::Rng(seed)};
  });
}

void purify_rng_free(purify_rng* rng) { delete rng; }

purify_status purify_rng_uniform(purify_rng* rng, double* out) {
  return guard([&] {
    need(rng, "rng");
    need(out, "out");
    *out = rng->rng.uniform();
  });
}

purify_status purify_tableau_new(size_t num_qubits, purify_tableau** out) {
  return guard([&] {
    need(out, "out");
    *out = new purify_tableau{purify::MixedTableau::maximally_mixed(num_qubits)};
  });
}

purify_status purify_tableau_from_text(const char* text, purify_tableau** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new purify_tableau{purify::MixedTableau::from_text(text)};
  });
}

purify_status purify_tableau_clone(const purify_tableau* t, purify_tableau** out) {
  return guard([&] {
    need(t, "tableau");
    need(out, "out");
    *out = new purify_tableau{t->state};
  });
}

void purify_tableau_free(purify_tableau* t) { delete t; }

purify_status purify_tableau_num_qubits(const purify_tableau* t, size_t* out) {
  return guard([&] {
    need(t, "tableau");
    need(out, "out");
    *out = t->state.num_qubits();
  });
}

purify_status purify_tableau_rank(const purify_tableau* t, size_t* out) {
  return guard([&] {
    need(t, "tableau");
    need(out, "out");
    *out = t->state.num_generators();
  });
}

purify_status purify_tableau_apply_clifford(purify_tableau* t, size_t index, size_t a, size_t b) {
  return guard([&] {
    need(t, "tableau");
    const auto& table = purify::CliffordTable::instance();
    if (index >= table.size()) throw purify::ValidationError("gate index out of range");
    t->state.apply(table[index], a, b);
  });
}

purify_status purify_tableau_apply_random_clifford(purify_tableau* t, purify_rng* rng, size_t a, size_t b,
                                                   size_t* index_out) {
  return guard([&] {
    need(t, "tableau");
    need(rng, "rng");
    const auto& table = purify::CliffordTable::instance();
    const std::size_t k = table.sample_index(rng->rng);
    t->state.apply(table[k], a, b);
    if (index_out) *index_out = k;
  });
}

purify_status purify_tableau_measure_z(purify_tableau* t, purify_rng* rng, size_t site, int* outcome, int* purified) {
  return guard([&] {
    need(t, "tableau");
    need(rng, "rng");
    const auto m = t->state.measure_z(site, rng->rng);
    if (outcome) *outcome = m.value;
    if (purified) *purified = m.purified ? 1 : 0;
  });
}

purify_status purify_tableau_step(purify_tableau* t, purify_rng* rng, size_t time, double p) {
  return guard([&] {
    need(t, "tableau");
    need(rng, "rng");
    if (!(p >= 0.0 && p <= 1.0)) throw purify::ValidationError("p out of [0,1]");
    const auto mp = purify::uniform_profile(t->state.num_qubits(), p);
    purify::step(t->state, time, mp, nullptr, purify::CliffordTable::instance(), rng->rng);
  });
}

purify_status purify_tableau_log_purity(const purify_tableau* t, size_t* out) {
  return guard([&] {
    need(t, "tableau");
    need(out, "out");
    *out = purify::log_purity(t->state);
  });
}

purify_status purify_tableau_negativity(const purify_tableau* t, size_t first, size_t length, size_t* out) {
  return guard([&] {
    need(t, "tableau");
    need(out, "out");
    const std::size_t n = t->state.num_qubits();
    *out = purify::negativity(t->state, purify::Region::window(first, length, n));
  });
}

purify_status purify_tableau_check(const purify_tableau* t) {
  return guard([&] {
    need(t, "tableau");
    t->state.check_invariants();
  });
}

purify_status purify_tableau_to_text(const purify_tableau* t, char* buffer, size_t capacity, size_t* needed) {
  return guard([&] {
    need(t, "tableau");
    const std::string text = t->state.to_text();
    if (needed) *needed = text.size() + 1;
    if (buffer && capacity > 0) {
      const std::size_t n = std::min(capacity - 1, text.size());
      std::memcpy(buffer, text.data(), n);
      buffer[n] = '\0';
    }
  });
}

size_t purify_clifford_count(void) { return purify::CliffordTable::instance().size(); }

purify_status purify_simulate(const purify_simulate_options* options) {
  return run_command([&](std::ostream& log) {
    need(options, "options");
    need(options->config_path, "config_path");
    purify::SimulateOptions o;
    o.config_path = options->config_path;
    o.out_dir = str_or(options->out_dir, ".");
    if (options->has_seed) o.seed = options->seed;
    if (options->workers) o.workers = options->workers;
    if (options->observable) o.observable = purify::parse_observables(options->observable);
    if (options->has_profile_anchor) o.profile_anchor = options->profile_anchor;
    return purify::cmd_simulate(o, log);
  });
}

purify_status purify_collapse(const char* csv_path, const char* observable, const char* out_dir, double p_c,
                              double nu, double zeta) {
  return run_command([&](std::ostream& log) {
    need(csv_path, "csv_path");
    const purify::FitInput in{csv_path, str_or(observable, "mbn"), str_or(out_dir, ".")};
    return purify::cmd_collapse(in, purify::CollapseGuess{p_c, nu, zeta}, log);
  });
}

purify_status purify_fit_powerlaw(const char* csv_path, const char* observable, const char* out_dir,
                                  double parameter) {
  return run_command([&](std::ostream& log) {
    need(csv_path, "csv_path");
    const purify::FitInput in{csv_path, str_or(observable, "mbn"), str_or(out_dir, ".")};
    return purify::cmd_fit_powerlaw(in, parameter, log);
  });
}

purify_status purify_fit_purity(const char* csv_path, const char* observable, const char* out_dir) {
  return run_command([&](std::ostream& log) {
    need(csv_path, "csv_path");
    const purify::FitInput in{csv_path, str_or(observable, "purity"), str_or(out_dir, ".")};
    return purify::cmd_fit_purity(in, log);
  });
}

void purify_effham_defaults(purify_effham_options* options) {
  if (!options) return;
  static const double zero = 0.0;
  const purify::EffhamOptions d;
  options->num_sites = d.num_sites;
  options->gammas = &zero;
  options->num_gammas = 1;
  options->amplitude = d.amplitude;
  options->dtau = d.dtau;
  options->steps = d.steps;
  options->print_coefficients = 0;
  options->out_dir = nullptr;
}

purify_status purify_effham(const purify_effham_options* options) {
  return run_command([&](std::ostream& log) {
    need(options, "options");
    if (options->num_gammas && !options->gammas) throw purify::ValidationError("gammas: null pointer");
    purify::EffhamOptions o;
    o.num_sites = options->num_sites;
    o.gammas.assign(options->gammas, options->gammas + options->num_gammas);
    if (o.gammas.empty()) throw purify::ValidationError("effham.gamma: at least one value required");
    o.amplitude = options->amplitude;
    o.dtau = options->dtau;
    o.steps = options->steps;
    o.print_coefficients = options->print_coefficients != 0;
    o.out_dir = str_or(options->out_dir, ".");
    return purify::cmd_effham(o, log);
  });
}

purify_status purify_effham_config(const char* config_path, const char* out_dir, int print_coefficients) {
  return run_command([&](std::ostream& log) {
    need(config_path, "config_path");
    const auto cfg = purify::load_config(config_path);
    if (!cfg.effham) throw purify::ValidationError("effham: config has no [effham] section");
    purify::EffhamOptions o;
    o.num_sites = cfg.effham->num_sites;
    o.gammas = cfg.effham->gammas;
    o.amplitude = cfg.effham->amplitude;
    o.dtau = cfg.effham->dtau;
    o.steps = cfg.effham->steps;
    o.print_coefficients = print_coefficients != 0;
    o.out_dir = str_or(out_dir, ".");
    return purify::cmd_effham(o, log);
  });
}

purify_status purify_selftest(void) {
  return run_command([&](std::ostream& log) { return purify::cmd_selftest(log); });
}

}  // extern "C"
