#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "shiftlab/block_codes.hpp"
#include "shiftlab/int_matrix.hpp"
#include "shiftlab/shift_spaces.hpp"

namespace shiftlab::io {

using Json = nlohmann::ordered_json;

// Malformed input; the message starts with the file and location.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatrixFile {
  std::string name;  // "name" key, or the file stem
  IntMatrix matrix;
};

// JSON {"name": ..., "rows": [[...]]}, a bare JSON array of rows, or plain
// text rows of whitespace-separated integers ('#' starts a comment).
// Entries must be nonnegative integers; JSON strings of digits are accepted
// for values past 64 bits.
MatrixFile parse_matrix(const std::string& text, const std::string& origin);
MatrixFile read_matrix(const std::string& path);

// `j` is a rows array or an object with "rows".
IntMatrix matrix_from_json(const Json& j, const std::string& where);
Json matrix_to_json(const IntMatrix& m);
// Fits in 64 bits: a number; otherwise a decimal string.
Json integer_to_json(const Integer& x);

// {"m", "n", "source_alphabet", "target_alphabet", "table": {"12": 1, ...}}
// with optional "source_matrix" / "target_matrix"; without them the shift
// is the full shift on the alphabet.  Windows and symbols are 1-based.
BlockMap parse_block_map(const std::string& text, const std::string& origin);
BlockMap read_block_map(const std::string& path);
Json block_map_to_json(const BlockMap& phi);

// {"matrices": [...], "steps": [{"R": ..., "S": ...}]}
SseChain parse_chain(const std::string& text, const std::string& origin);
SseChain read_chain(const std::string& path);
Json chain_to_json(const SseChain& chain);

// "121", "1 2 1" or "1,2,1" over {1..alphabet}; 0-based result.  Past
// nine symbols an unseparated string is a single symbol.
Word parse_word(const std::string& text, std::size_t alphabet);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace shiftlab::io
