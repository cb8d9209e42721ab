#include "tdist/fst_format.hpp"

#include <set>

#include "tdist/error.hpp"

namespace tdist {
namespace {

struct Tok {
  std::string text;
  bool quoted = false;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(Errc::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

std::vector<Tok> lex_line(std::string_view line, int line_no) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == '"') {
      std::size_t j = line.find('"', i + 1);
      if (j == std::string_view::npos) fail(line_no, "unterminated quote");
      out.push_back({std::string(line.substr(i + 1, j - i - 1)), true});
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
             line[j] != '\r' && line[j] != '"' && line[j] != '#')
        ++j;
      out.push_back({std::string(line.substr(i, j - i)), false});
      i = j;
    }
  }
  return out;
}

void parse_state_line(const std::vector<Tok>& toks, int line_no,
                      MachineDesc& desc) {
  if (toks.size() < 2 || toks[1].quoted) fail(line_no, "state needs a name");
  MachineDesc::State st;
  st.id = toks[1].text;
  std::size_t i = 2;
  while (i < toks.size()) {
    if (toks[i].quoted) fail(line_no, "unexpected quoted word");
    if (toks[i].text == "initial") {
      st.initial = true;
      ++i;
    } else if (toks[i].text == "final") {
      st.final = true;
      ++i;
      if (i < toks.size() && toks[i].quoted) {
        st.final_output = toks[i].text;
        ++i;
      }
    } else {
      fail(line_no, "unknown state flag '" + toks[i].text + "'");
    }
  }
  desc.states.push_back(std::move(st));
}

}  // namespace

FstDocument parse_fst(std::string_view text) {
  FstDocument doc;
  std::set<std::string> names;

  MachineDesc current;
  bool in_block = false, saw_inputs = false, saw_outputs = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::vector<Tok> toks = lex_line(line, line_no);
    if (toks.empty()) continue;
    const std::string& head = toks[0].text;

    if (!in_block) {
      if (toks[0].quoted || head != "fst") fail(line_no, "expected 'fst'");
      if (toks.size() != 2 || toks[1].quoted)
        fail(line_no, "fst needs exactly one name");
      if (!names.insert(toks[1].text).second)
        throw Error(Errc::DuplicateName,
                    "line " + std::to_string(line_no) + ": machine name '" +
                        toks[1].text + "' reused");
      current = MachineDesc{};
      current.name = toks[1].text;
      in_block = true;
      saw_inputs = saw_outputs = false;
      continue;
    }

    if (!toks[0].quoted && head == "end") {
      if (toks.size() != 1) fail(line_no, "end takes no arguments");
      if (!saw_inputs) fail(line_no, "block is missing 'inputs'");
      if (!saw_outputs) fail(line_no, "block is missing 'outputs'");
      doc.machines.push_back(std::move(current));
      in_block = false;
    } else if (!toks[0].quoted && (head == "inputs" || head == "outputs")) {
      bool& seen = head == "inputs" ? saw_inputs : saw_outputs;
      if (seen) fail(line_no, "duplicate '" + head + "'");
      seen = true;
      std::string letters;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (toks[i].quoted || toks[i].text.size() != 1)
          fail(line_no, head + " takes single character letters");
        letters += toks[i].text;
      }
      (head == "inputs" ? current.input_letters : current.output_letters) =
          std::move(letters);
    } else if (!toks[0].quoted && head == "state") {
      parse_state_line(toks, line_no, current);
    } else if (toks.size() == 4 && !toks[0].quoted && !toks[1].quoted &&
               !toks[2].quoted && toks[3].quoted) {
      current.arrows.push_back(
          {toks[0].text, toks[1].text, toks[2].text, toks[3].text});
    } else {
      fail(line_no, "expected a state line, an arrow line or 'end'");
    }
  }

  if (in_block)
    fail(line_no, "document ends inside block '" + current.name + "'");
  if (doc.machines.empty())
    throw Error(Errc::EmptyDocument, "no machines in document");
  return doc;
}

std::string serialize_fst(const FstDocument& doc) {
  std::string out;
  bool first = true;
  for (const MachineDesc& m : doc.machines) {
    if (!first) out += '\n';
    first = false;
    out += "fst " + m.name + '\n';
    out += "inputs";
    for (char c : m.input_letters) out += std::string(" ") + c;
    out += "\noutputs";
    for (char c : m.output_letters) out += std::string(" ") + c;
    out += '\n';
    for (const MachineDesc::State& st : m.states) {
      out += "state " + st.id;
      if (st.initial) out += " initial";
      if (st.final) out += " final \"" + st.final_output + '"';
      out += '\n';
    }
    for (const MachineDesc::Arrow& ar : m.arrows)
      out += ar.from + ' ' + ar.to + ' ' + ar.letter + " \"" + ar.output +
             "\"\n";
    out += "end\n";
  }
  return out;
}

MachineDesc describe(const Transducer& m, std::string name) {
  if (m.tape_count != 1)
    throw Error(Errc::ArityMismatch, "only single tape machines serialize");
  if (!m.input_alphabet.single_char() || !m.output_alphabet.single_char())
    throw Error(Errc::InvalidInput,
                "only single character alphabets serialize");

  MachineDesc d;
  d.name = std::move(name);
  for (std::size_t i = 0; i < m.input_alphabet.size(); ++i)
    d.input_letters += m.input_alphabet.name(static_cast<Symbol>(i));
  for (std::size_t i = 0; i < m.output_alphabet.size(); ++i)
    d.output_letters += m.output_alphabet.name(static_cast<Symbol>(i));

  auto state_name = [](StateId q) { return "q" + std::to_string(q); };
  std::vector<bool> initial(m.num_states, false);
  for (StateId q : m.initials) initial[q] = true;
  for (StateId q = 0; q < m.num_states; ++q) {
    MachineDesc::State st;
    st.id = state_name(q);
    st.initial = initial[q];
    if (const OutputTuple* fo = m.final_output(q)) {
      st.final = true;
      st.final_output = (*fo)[0];
    }
    d.states.push_back(std::move(st));
  }
  for (const Transition& t : m.transitions)
    d.arrows.push_back({state_name(t.from), state_name(t.to),
                        m.input_alphabet.name(t.letter), t.outputs[0]});
  return d;
}

}  // namespace tdist
