#include "chebstep/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "chebstep/util.hpp"

namespace chebstep::kernels {

const Table& active() {
  static const Table* selected = [] {
    const char* env = std::getenv("CHEBSTEP_KERNELS");
    const Table* avx2 = avx2_table();
    if (env != nullptr && std::strcmp(env, "scalar") == 0)
      return &scalar_table();
    if (env != nullptr && std::strcmp(env, "avx2") == 0) {
      if (avx2 != nullptr) return avx2;
      log_info("CHEBSTEP_KERNELS=avx2 requested but unsupported; using scalar");
      return &scalar_table();
    }
    return avx2 != nullptr ? avx2 : &scalar_table();
  }();
  if (log_level() >= 2) {
    static bool logged = [&] {
      log_debug(std::string("kernel table: ") + selected->name);
      return true;
    }();
    (void)logged;
  }
  return *selected;
}

}  // namespace chebstep::kernels
