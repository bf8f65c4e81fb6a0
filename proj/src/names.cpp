#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "courtrank/dataset.hpp"
#include "text.hpp"

namespace courtrank {

namespace {

// Base letters for U+00C0..U+00FF and U+0100..U+017F. '*' marks a ligature
// or multi-letter expansion handled separately; '_' drops the code point.
constexpr std::string_view kLatin1 =
    "aaaaaa*ceeeeiiii"
    "dnooooo_ouuuuy**"
    "aaaaaa*ceeeeiiii"
    "dnooooo_ouuuuy*y";
constexpr std::string_view kLatinExtA =
    "aaaaaaccccccccdd"
    "ddeeeeeeeeeegggg"
    "gggghhhhiiiiiiii"
    "ii**jjkkklllllll"
    "lllnnnnnnnnnoooo"
    "oo**rrrrrrssssss"
    "ssttttttuuuuuuuu"
    "uuuuwwyyyzzzzzzs";

std::string_view expansion(char32_t cp) {
  switch (cp) {
    case 0xC6: case 0xE6: return "ae";
    case 0xDE: case 0xFE: return "th";
    case 0xDF: return "ss";
    case 0x132: case 0x133: return "ij";
    case 0x152: case 0x153: return "oe";
    default: return "";
  }
}

bool is_upper_code_point(char32_t cp) {
  if (cp < 0x100) return cp < 0xDF;
  if (cp <= 0x137) return cp % 2 == 0;
  if (cp <= 0x148) return cp % 2 == 1;
  if (cp <= 0x177) return cp % 2 == 0;
  if (cp == 0x178) return true;
  if (cp <= 0x17E) return cp % 2 == 1;
  return false;
}

// ASCII transliteration preserving case. Unknown multibyte sequences pass
// through unchanged.
std::string transliterate(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size();) {
    const auto c = static_cast<unsigned char>(in[i]);
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
      ++i;
      continue;
    }
    if ((c & 0xE0) == 0xC0 && i + 1 < in.size()) {
      const auto c2 = static_cast<unsigned char>(in[i + 1]);
      const char32_t cp = (static_cast<char32_t>(c & 0x1F) << 6) | (c2 & 0x3F);
      char base = 0;
      if (cp >= 0xC0 && cp <= 0xFF) base = kLatin1[cp - 0xC0];
      if (cp >= 0x100 && cp <= 0x17F) base = kLatinExtA[cp - 0x100];
      if (base != 0) {
        const bool upper = is_upper_code_point(cp);
        if (base == '*') {
          std::string exp(expansion(cp));
          if (upper && !exp.empty()) exp[0] = static_cast<char>(std::toupper(exp[0]));
          out += exp;
        } else if (base != '_') {
          out.push_back(upper ? static_cast<char>(std::toupper(base)) : base);
        }
        i += 2;
        continue;
      }
    }
    out.push_back(static_cast<char>(c));
    ++i;
  }
  return out;
}

bool is_initials_token(std::string_view tok) {
  bool any_letter = false;
  std::size_t run = 0;
  for (char ch : tok) {
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      if (++run > 1) return false;
      any_letter = true;
    } else if (ch == '.' || ch == '-') {
      run = 0;
    } else {
      return false;
    }
  }
  return any_letter;
}

std::string initials_of(std::string_view tok) {
  std::string out;
  for (char ch : tok) {
    if (std::isalpha(static_cast<unsigned char>(ch)))
      out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  }
  return out;
}

bool is_particle(std::string_view word) {
  static constexpr std::string_view kParticles[] = {
      "de", "del", "della", "di", "da", "dos", "das", "du", "van", "von", "der", "den", "ter",
      "ten", "la", "le", "st", "st."};
  const std::string w = text::lower(word);
  return std::find(std::begin(kParticles), std::end(kParticles), w) != std::end(kParticles);
}

std::string title_case_word(std::string_view word) {
  const bool has_lower = std::any_of(word.begin(), word.end(),
                                     [](char c) { return std::islower(static_cast<unsigned char>(c)); });
  const bool has_upper = std::any_of(word.begin(), word.end(),
                                     [](char c) { return std::isupper(static_cast<unsigned char>(c)); });
  std::string out(word);
  if (has_lower && has_upper) return out;
  bool start = true;
  for (char& c : out) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalpha(uc)) {
      c = static_cast<char>(start ? std::toupper(uc) : std::tolower(uc));
      start = false;
    } else {
      start = (c == '-' || c == '\'');
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& words, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += words[i];
  }
  return out;
}

struct NameParts {
  std::vector<std::string> words;  // non-initial tokens in input order
  std::size_t surname_from = 0;    // words[surname_from..] form the surname
  std::string initials;
  bool full_form = false;  // given names spelled out; surname split is a guess

  std::string surname() const { return join(words, surname_from, words.size()); }

  std::string canonical() const {
    std::string out;
    for (std::size_t i = surname_from; i < words.size(); ++i) {
      if (!out.empty()) out.push_back(' ');
      out += title_case_word(words[i]);
    }
    if (!initials.empty()) {
      out.push_back(' ');
      for (char c : initials) {
        out.push_back(c);
        out.push_back('.');
      }
    }
    return out;
  }
};

// "Jo-Wilfried" -> "JW"
std::string given_initials(std::string_view word) {
  std::string out;
  for (auto part : text::split(word, '-')) {
    if (!part.empty()) out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(part.front()))));
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view s) {
  const std::string collapsed = text::collapse_spaces(s);
  std::vector<std::string> tokens;
  for (auto tok : text::split(collapsed, ' ')) {
    if (!tok.empty()) tokens.emplace_back(tok);
  }
  return tokens;
}

NameParts parse_name(std::string_view raw) {
  const std::string cleaned = text::collapse_spaces(transliterate(raw));
  if (cleaned.empty()) throw InputError("empty player name");

  NameParts parts;
  // "Surname, Given Names" or "Surname, G."
  if (const auto comma = cleaned.find(','); comma != std::string::npos) {
    parts.words = tokenize(std::string_view(cleaned).substr(0, comma));
    std::string given(std::string_view(cleaned).substr(comma + 1));
    std::replace(given.begin(), given.end(), ',', ' ');
    for (const auto& tok : tokenize(given))
      parts.initials += is_initials_token(tok) ? initials_of(tok) : given_initials(tok);
    if (!parts.words.empty()) return parts;
    parts = NameParts{};
  }

  std::string plain = cleaned;
  std::replace(plain.begin(), plain.end(), ',', ' ');
  const std::vector<std::string> tokens = tokenize(plain);
  if (tokens.empty()) throw InputError("empty player name");
  // Trailing initials: "Del Potro J.M."
  std::size_t tail = tokens.size();
  while (tail > 0 && is_initials_token(tokens[tail - 1])) --tail;
  if (tail > 0 && tail < tokens.size()) {
    parts.words.assign(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(tail));
    for (std::size_t i = tail; i < tokens.size(); ++i) parts.initials += initials_of(tokens[i]);
    return parts;
  }
  // Leading initials: "J.M Del Potro"
  std::size_t head = 0;
  while (head < tokens.size() && is_initials_token(tokens[head])) ++head;
  if (head > 0 && head < tokens.size()) {
    parts.words.assign(tokens.begin() + static_cast<std::ptrdiff_t>(head), tokens.end());
    for (std::size_t i = 0; i < head; ++i) parts.initials += initials_of(tokens[i]);
    return parts;
  }
  if (head == tokens.size()) {
    // Nothing but initials; keep the spelling as a surname.
    parts.words = tokens;
    return parts;
  }
  // Full form: "Juan Martin Del Potro". Surname is the last word plus any
  // lowercase-style particles in front of it.
  parts.words = tokens;
  parts.full_form = true;
  std::size_t from = tokens.size() - 1;
  while (from > 1 && is_particle(tokens[from - 1])) --from;
  parts.surname_from = from;
  for (std::size_t i = 0; i < from; ++i) parts.initials += given_initials(tokens[i]);
  return parts;
}

bool candidate_matches(const NameParts& input, const NameParts& known) {
  const std::string known_surname = fold_name(known.surname());
  if (input.full_form) {
    for (std::size_t split = 0; split < input.words.size(); ++split) {
      if (fold_name(join(input.words, split, input.words.size())) != known_surname) continue;
      if (split == 0 || known.initials.empty()) return true;
      const char first =
          static_cast<char>(std::toupper(static_cast<unsigned char>(input.words[0].front())));
      if (first == known.initials.front()) return true;
    }
    return false;
  }
  if (fold_name(input.surname()) != known_surname) return false;
  if (input.initials.empty() || known.initials.empty()) return true;
  return input.initials.front() == known.initials.front();
}

}  // namespace

std::string fold_name(std::string_view name) {
  return text::lower(text::collapse_spaces(transliterate(name)));
}

std::string normalize_player(std::string_view name, const std::set<std::string>& known) {
  const NameParts parts = parse_name(name);
  const std::string canonical = parts.canonical();
  const std::string folded_raw = fold_name(name);
  const std::string folded_canonical = fold_name(canonical);

  for (const auto& k : known) {
    const std::string fk = fold_name(k);
    if (fk == folded_canonical || fk == folded_raw) return k;
  }

  std::vector<std::string> matches;
  for (const auto& k : known) {
    if (candidate_matches(parts, parse_name(k))) matches.push_back(k);
  }
  if (matches.size() > 1) {
    std::string msg = "ambiguous player name '" + std::string(name) + "' matches";
    for (const auto& m : matches) msg += " '" + m + "'";
    throw AmbiguityError(msg);
  }
  if (matches.size() == 1) return matches.front();
  return canonical;
}

std::string NameRegistry::resolve(std::string_view name) {
  std::string key(name);
  if (auto it = resolved_.find(key); it != resolved_.end()) return it->second;
  std::string result = normalize_player(name, known_);
  known_.insert(result);
  resolved_.emplace(std::move(key), result);
  return result;
}

}  // namespace courtrank
