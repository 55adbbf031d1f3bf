#include <cstdlib>
#include <string>

#include "atomrec/kernels.hpp"

namespace atomrec::kernels {

namespace {

struct Selection {
  const Ops* ops;
  std::string name;
};

Selection select() {
  const char* force = std::getenv("ATOMIC_SIMD");
  const std::string mode = force ? force : "auto";
  if (mode == "scalar") return {&detail::scalar_ops, "scalar"};
#if defined(__x86_64__) || defined(_M_X64)
  if (mode == "avx2" || mode == "auto") {
    if (detail::avx2_supported()) return {&detail::avx2_ops, "avx2"};
  }
#endif
  return {&detail::scalar_ops, "scalar"};
}

const Selection& selection() {
  static const Selection s = select();
  return s;
}

}  // namespace

const Ops& active() { return *selection().ops; }

const Ops& scalar() { return detail::scalar_ops; }

const std::string& active_name() { return selection().name; }

}  // namespace atomrec::kernels
