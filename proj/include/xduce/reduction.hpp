#pragma once

#include <string>
#include <utility>
#include <vector>

#include "xduce/machines.hpp"
#include "xduce/semantics.hpp"
#include "xduce/words.hpp"

namespace xduce {

enum class ReductionMode { copy, step };

// Cell-token encoding of a configuration: plain cells use the tape symbol
// itself, the head cell uses "state@symbol" ("state@." over the blank).
Word encode_configuration(const TuringMachine& m, const Configuration& c);

struct ReductionNft {
  Nft nft;
  std::vector<std::pair<std::string, std::string>> legend;  // token, meaning
};

// Compiles a Turing machine into a transducer over configuration streams.
// Inputs have the shape "enc(d0) ;; enc(d1) ;; ... enc(dk) ;; <mode>" with
// k >= 0 and every d_i a well-formed configuration (exactly one head cell).
// The copy branch accepts any such stream under mode "copy" and echoes it
// without the mode token. The step branch, under mode "step", emits the
// machine's initial configuration up front and then each d_i's successor
// while reading d_i one token behind; it dies on halting configurations.
// On a genuine run prefix the step output therefore extends the copy output
// by exactly one configuration, which grows with k whenever the machine
// keeps running.
ReductionNft tm_to_nft(const TuringMachine& m);

// "enc(c0) ;; ... enc(ck) ;; <mode>" for the machine's own run c0, c1, ...
// Throws when the machine halts before step k.
Word build_reduction_input(const TuringMachine& m, std::size_t k,
                           ReductionMode mode);

// The output the chosen branch produces on build_reduction_input(m, k, mode).
Word expected_reduction_output(const TuringMachine& m, std::size_t k,
                               ReductionMode mode);

// Serialization preceded by a "# legend:" comment block naming every token.
std::string serialize_with_legend(const ReductionNft& r);

}  // namespace xduce
