// extern "C" surface of the shared library.  Exceptions from the core are
// caught at this boundary and mapped onto the stable status codes.

#include "ssr/ssr.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>

#include "runner.hpp"

using namespace ssr;

struct ssr_group {
  GroupBundle bundle;
};

struct ssr_state {
  StateBundle bundle;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

int guard(const std::function<void()>& body) {
  try {
    body();
    g_last_error.clear();
    return SSR_OK;
  } catch (const ParseError& e) {
    return fail(SSR_ERR_PARSE, e.what());
  } catch (const ValidationError& e) {
    return fail(SSR_ERR_VALIDATION, e.what());
  } catch (const std::exception& e) {
    return fail(SSR_ERR_VALIDATION, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Symmetry symmetry_for(const ssr_state* state, const ssr_group* group) {
  const StateBundle& b = state->bundle;
  if (b.symmetric) return symmetry_of(*b.symmetric);
  if (!b.charges.empty()) return Symmetry::u1(b.charges);
  if (group) {
    if (group->bundle.rep.dim() != b.rho.dim())
      throw ValidationError("group representation does not act on this state");
    return Symmetry::finite(group->bundle.rep);
  }
  throw ValidationError("quantity needs a group or a state with intrinsic charges");
}

}  // namespace

extern "C" {

const char* ssr_version(void) { return kToolVersion; }

const char* ssr_last_error(void) { return g_last_error.c_str(); }

void ssr_free_string(char* s) { std::free(s); }

int ssr_run_json(const char* config_json, char** report_out) {
  if (!config_json || !report_out) return fail(SSR_ERR_VALIDATION, "null argument");
  *report_out = nullptr;

  Json config;
  try {
    config = Json::parse(config_json);
  } catch (const std::exception& e) {
    return fail(SSR_ERR_PARSE, std::string("config: ") + e.what());
  }

  RunResult result;
  try {
    result = run_command(config_from_json(config));
  } catch (const ParseError& e) {
    return fail(SSR_ERR_PARSE, e.what());
  } catch (const ValidationError& e) {
    return fail(SSR_ERR_VALIDATION, e.what());
  } catch (const std::exception& e) {
    return fail(SSR_ERR_VALIDATION, e.what());
  }

  *report_out = dup_string(result.report.dump(2));
  if (!*report_out) return fail(SSR_ERR_VALIDATION, "out of memory");
  if (result.status != kStatusOk && result.report.contains("error"))
    g_last_error = result.report["error"].get<std::string>();
  else
    g_last_error.clear();
  return result.status;
}

int ssr_group_open_catalog(const char* name, ssr_group** out) {
  if (!name || !out) return fail(SSR_ERR_VALIDATION, "null argument");
  *out = nullptr;
  return guard([&] {
    auto handle = std::make_unique<ssr_group>();
    handle->bundle.group = make_group(name);
    handle->bundle.rep = regular_representation(handle->bundle.group);
    handle->bundle.description = std::string(name) + " (regular representation)";
    *out = handle.release();
  });
}

int ssr_group_open_spec(const char* spec_json, ssr_group** out) {
  if (!spec_json || !out) return fail(SSR_ERR_VALIDATION, "null argument");
  *out = nullptr;
  return guard([&] {
    Json spec;
    try {
      spec = Json::parse(spec_json);
    } catch (const std::exception& e) {
      throw ParseError(std::string("group spec: ") + e.what());
    }
    auto handle = std::make_unique<ssr_group>();
    handle->bundle = parse_group_spec(spec);
    *out = handle.release();
  });
}

void ssr_group_close(ssr_group* group) { delete group; }

int ssr_group_order(const ssr_group* group, int* out) {
  if (!group || !out) return fail(SSR_ERR_VALIDATION, "null argument");
  *out = group->bundle.group->order;
  return SSR_OK;
}

int ssr_group_num_irreps(const ssr_group* group, int* out) {
  if (!group || !out) return fail(SSR_ERR_VALIDATION, "null argument");
  *out = group->bundle.group->num_irreps();
  return SSR_OK;
}

int ssr_group_rep_dim(const ssr_group* group, int* out) {
  if (!group || !out) return fail(SSR_ERR_VALIDATION, "null argument");
  *out = group->bundle.rep.dim();
  return SSR_OK;
}

int ssr_group_orthogonality_residual(const ssr_group* group, double* out) {
  if (!group || !out) return fail(SSR_ERR_VALIDATION, "null argument");
  return guard([&] { *out = grand_orthogonality_residual(*group->bundle.group); });
}

int ssr_state_open_spec(const char* spec_json, const ssr_group* group, ssr_state** out) {
  if (!spec_json || !out) return fail(SSR_ERR_VALIDATION, "null argument");
  *out = nullptr;
  return guard([&] {
    Json spec;
    try {
      spec = Json::parse(spec_json);
    } catch (const std::exception& e) {
      throw ParseError(std::string("state spec: ") + e.what());
    }
    auto handle = std::make_unique<ssr_state>();
    handle->bundle = parse_state_spec(spec, group ? &group->bundle : nullptr);
    const ValidationReport report = validate_density(handle->bundle.rho);
    if (!report.ok()) throw ValidationError("state invalid: " + report.summary());
    *out = handle.release();
  });
}

int ssr_state_open_builder(const char* builder, const ssr_group* group, ssr_state** out) {
  if (!builder || !out) return fail(SSR_ERR_VALIDATION, "null argument");
  *out = nullptr;
  return guard([&] {
    auto handle = std::make_unique<ssr_state>();
    handle->bundle = load_state(builder, group ? &group->bundle : nullptr);
    *out = handle.release();
  });
}

void ssr_state_close(ssr_state* state) { delete state; }

int ssr_state_dim(const ssr_state* state, int* out) {
  if (!state || !out) return fail(SSR_ERR_VALIDATION, "null argument");
  *out = state->bundle.rho.dim();
  return SSR_OK;
}

int ssr_quantity(const ssr_state* state, const ssr_group* group, const char* name, double* out) {
  if (!state || !name || !out) return fail(SSR_ERR_VALIDATION, "null argument");
  return guard([&] {
    const std::string quantity = name;
    const StateBundle& b = state->bundle;

    if (quantity == "W") {
      *out = extractable_work(b.rho);
      return;
    }
    if (quantity == "E" || quantity == "W_L") {
      if (!b.pure || b.pure->dims.size() != 2)
        throw ValidationError(quantity + " needs a pure bipartite state");
      *out = quantity == "E" ? entanglement_entropy(*b.pure, 1) : local_work_pure(*b.pure, 1);
      return;
    }
    if (quantity == "H_ch" || quantity == "H_co" || quantity == "E_GxG" ||
        quantity == "W_GxG_L") {
      if (!b.symmetric)
        throw ValidationError(quantity + " needs a globally symmetric state (rho^beta)");
      if (quantity == "H_ch") *out = charge_entropy(*b.symmetric);
      else if (quantity == "H_co") *out = color_entropy(*b.symmetric);
      else if (quantity == "E_GxG") *out = accessible_entanglement(*b.symmetric);
      else *out = local_work_under_ssr(*b.symmetric);
      return;
    }

    const Symmetry sym = symmetry_for(state, group);
    if (quantity == "W_G") *out = work_under_ssr(b.rho, sym);
    else if (quantity == "A_G") *out = asymmetry(b.rho, sym);
    else if (quantity == "W_GxG") *out = total_work_local_ssr(b.rho, sym);
    else if (quantity == "A_sh") *out = shared_asymmetry(b.rho, sym);
    else if (quantity == "A_lo") *out = local_asymmetry(b.rho, sym);
    else throw ValidationError("unknown quantity \"" + quantity + "\"");
  });
}

}  // extern "C"
