#include "lci/rng.hpp"

namespace lci {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngConfig RngConfig::substream(std::uint64_t index) const {
  return RngConfig{seed, mix64(stream ^ mix64(index + 0x632BE59BD9B4E019ULL))};
}

CounterRng::CounterRng(const RngConfig& config)
    : key_(mix64(config.seed ^ mix64(config.stream + 0xD1B54A32D192ED03ULL))) {}

}  // namespace lci
