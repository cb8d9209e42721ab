#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tdist/transducer.hpp"

namespace tdist {

// Line based text format for documents of named machines:
//
//   # comment, blank lines ignored
//   fst <name>
//   inputs <letter> <letter> ...
//   outputs <letter> <letter> ...
//   state <id> [initial] [final ["<word>"]]
//   <from> <to> <letter> "<output>"
//   end
//
// inputs/outputs appear once per block, each letter one character. state
// and arrow lines mix freely and may reference states declared later.
// Arrow outputs are always quoted; a final flag without a word means the
// empty word. '#' outside quotes starts a comment.
struct FstDocument {
  std::vector<MachineDesc> machines;
};

// Throws SyntaxError (with a line number), DuplicateName for a reused
// machine name, EmptyDocument when no block is present.
FstDocument parse_fst(std::string_view text);

// Canonical listing; parse and serialize are mutually idempotent.
std::string serialize_fst(const FstDocument& doc);

// Canonical description of a built machine: states renamed q0..qN in id
// order. Single tape and single character alphabets only.
MachineDesc describe(const Transducer& m, std::string name);

}  // namespace tdist
