#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stel/parser.hpp"
#include "stel/semantics.hpp"

namespace stel {

/// Model file format, one extension per line, omitted names empty:
///   domain = d1 d2
///   concept A = d1
///   role r = (d1,d2) (d2,d2)
inline std::string write_model(const Interpretation& interp) {
  std::ostringstream out;
  out << "domain =";
  for (const auto& id : interp.domain()) out << ' ' << id;
  out << '\n';
  const std::size_t n = interp.size();
  for (const auto& [name, ext] : interp.concepts()) {
    out << "concept " << name << " =";
    ext.for_each([&](std::size_t i) { out << ' ' << interp.domain()[i]; });
    out << '\n';
  }
  for (const auto& [name, ext] : interp.roles()) {
    out << "role " << name << " =";
    ext.for_each([&](std::size_t bit) {
      out << " (" << interp.domain()[bit / n] << ',' << interp.domain()[bit % n] << ')';
    });
    out << '\n';
  }
  return out.str();
}

namespace detail {

struct ModelLine {
  std::vector<std::string> words;
  int line;
};

inline bool is_element_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

}  // namespace detail

inline Interpretation read_model(std::string_view text) {
  // Tokenize per line; '(', ')' and ',' separate role pair tokens.
  std::vector<detail::ModelLine> lines;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    detail::ModelLine ml{{}, lineno};
    std::string word;
    auto flush = [&] {
      if (!word.empty()) {
        ml.words.push_back(word);
        word.clear();
      }
    };
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',') {
        flush();
      } else {
        word += c;
      }
    }
    flush();
    if (!ml.words.empty()) lines.push_back(std::move(ml));
    if (end == text.size()) break;
    pos = end + 1;
  }

  if (lines.empty()) throw ParseError("empty model file", lineno, 1);
  const auto& head = lines.front();
  if (head.words.size() < 2 || head.words[0] != "domain" || head.words[1] != "=") {
    throw ParseError("model file must start with 'domain = ...'", head.line, 1);
  }
  std::vector<std::string> domain(head.words.begin() + 2, head.words.end());
  for (const auto& id : domain) {
    if (!detail::is_element_token(id)) {
      throw ParseError("malformed domain element '" + id + "'", head.line, 1);
    }
  }
  Interpretation interp{[&] {
    try {
      return Interpretation(std::move(domain));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), head.line, 1);
    }
  }()};
  const std::size_t n = interp.size();

  auto element = [&](const std::string& id, int line) {
    const auto idx = interp.element_index(id);
    if (!idx) throw ParseError("unknown domain element '" + id + "'", line, 1);
    return *idx;
  };

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& ml = lines[li];
    if (ml.words.size() < 3 || ml.words[2] != "=" ||
        (ml.words[0] != "concept" && ml.words[0] != "role")) {
      throw ParseError("expected 'concept NAME = ...' or 'role NAME = ...'", ml.line, 1);
    }
    const std::string& name = ml.words[1];
    if (!is_valid_name(name)) {
      throw ParseError("malformed name '" + name + "'", ml.line, 1);
    }
    if (ml.words[0] == "concept") {
      if (interp.concepts().count(name)) {
        throw ParseError("duplicate extension for concept '" + name + "'", ml.line, 1);
      }
      DenseSet ext(n);
      for (std::size_t w = 3; w < ml.words.size(); ++w) ext.set(element(ml.words[w], ml.line));
      interp.assign_concept(name, std::move(ext));
    } else {
      if (interp.roles().count(name)) {
        throw ParseError("duplicate extension for role '" + name + "'", ml.line, 1);
      }
      if ((ml.words.size() - 3) % 2 != 0) {
        throw ParseError("role extension must list (from,to) pairs", ml.line, 1);
      }
      DenseSet ext(n * n);
      for (std::size_t w = 3; w + 1 < ml.words.size(); w += 2) {
        ext.set(element(ml.words[w], ml.line) * n + element(ml.words[w + 1], ml.line));
      }
      interp.assign_role(name, std::move(ext));
    }
  }
  return interp;
}

}  // namespace stel
