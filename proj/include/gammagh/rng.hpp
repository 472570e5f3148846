/*
   Copyright 2026 The gammagh Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

namespace gammagh {

/// Deterministic pseudo-random stream addressed by (master seed, stream index).
///
/// Streams with the same address produce the same draws on every run and on
/// every thread. A stream is single-owner; give each concurrent task its own.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : engine_(make_seed(master_seed, stream_index)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return normal_(engine_); }

    /// Derives a sub-seed for a named experiment arm from a master seed.
    static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) {
        std::seed_seq seq{lo(master_seed), hi(master_seed), lo(tag), hi(tag), 0x9e3779b9u};
        std::uint32_t out[2];
        seq.generate(out, out + 2);
        return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    }

private:
    static std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
    static std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

    static std::seed_seq make_seed(std::uint64_t seed, std::uint64_t index) {
        return std::seed_seq{lo(seed), hi(seed), lo(index), hi(index)};
    }

    // seed_seq is not copyable, so construct the engine through a helper.
    struct Engine : boost::random::mt19937_64 {
        explicit Engine(std::seed_seq&& seq) : boost::random::mt19937_64(seq) {}
    };

    Engine engine_;
    boost::random::normal_distribution<double> normal_{0.0, 1.0};  // ziggurat
};

}  // namespace gammagh
