#include "normconc/normconc.h"

#include "io/commands.hpp"
#include "normconc/concentration.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct nc_context {
  std::uint64_t default_seed = 0;
  std::string last_error;
};

namespace {

template <class F>
nc_status guarded(nc_context* ctx, F body) {
  if (ctx == nullptr) return NC_INVALID_ARGUMENT;
  ctx->last_error.clear();
  try {
    body();
    return NC_OK;
  } catch (const normconc::Error& e) {
    ctx->last_error = e.what();
    return static_cast<nc_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
  } catch (...) {
    ctx->last_error = "unknown error";
  }
  return NC_INTERNAL;
}

}  // namespace

extern "C" {

const char* nc_version(void) { return "0.1.0"; }

const char* nc_status_name(nc_status status) {
  if (status == NC_OK) return "ok";
  return normconc::to_string(static_cast<normconc::ErrorCode>(status));
}

nc_status nc_context_create(uint64_t default_seed, nc_context** out) {
  if (out == nullptr) return NC_INVALID_ARGUMENT;
  *out = new (std::nothrow) nc_context;
  if (*out == nullptr) return NC_INTERNAL;
  (*out)->default_seed = default_seed;
  return NC_OK;
}

void nc_context_destroy(nc_context* ctx) { delete ctx; }

const char* nc_last_error(const nc_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

nc_status nc_run(nc_context* ctx, const char* command, const char* request_json, char** out) {
  return guarded(ctx, [&] {
    if (command == nullptr || request_json == nullptr || out == nullptr) {
      throw normconc::Error(normconc::ErrorCode::invalid_argument, "null argument");
    }
    *out = nullptr;
    const std::string text = normconc::io::run_command(command, request_json, ctx->default_seed);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void nc_text_free(char* text) { std::free(text); }

nc_status nc_quadratic_example(nc_context* ctx, int n, double theta, double* mcd_exponent,
                               double* halfspace_exponent) {
  return guarded(ctx, [&] {
    if (mcd_exponent == nullptr || halfspace_exponent == nullptr) {
      throw normconc::Error(normconc::ErrorCode::invalid_argument, "null output pointer");
    }
    const auto b = normconc::quadratic_example_bounds(n, theta);
    *mcd_exponent = b.mcdiarmid.exponent;
    *halfspace_exponent = b.halfspace.exponent;
  });
}

}  // extern "C"
