#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spearsift/email.hpp"

namespace spearsift {

enum class CorpusFormat { mbox, maildir, eml_dir };

std::string_view corpus_format_name(CorpusFormat format);
CorpusFormat corpus_format_from_name(std::string_view name);

// Parses one message. Header lines split at the first ':', continuation
// lines (leading whitespace) fold into the previous value, the first blank
// line starts the body. Throws ParseError when no header can be recovered
// and MissingSender when the From field is absent or unparseable.
RawEmail parse_email(std::string_view raw_bytes, std::string source_id);

// Extracts the addr-spec from "addr", "<addr>" or "Display Name <addr>",
// lowercased. Throws MissingSender when no '@'-bearing token is found.
std::string normalize_sender(std::string_view from_value);

// Inverse of parse_email for round-tripping: one "name: value" line per
// header, a blank line, then the body.
std::string serialize_email(const RawEmail& email);

struct SkippedMessage {
    std::string source_id;
    std::string reason;
};

struct LoadResult {
    Corpus corpus;
    std::vector<SkippedMessage> skipped;
};

// Loads a benign corpus. Unparseable messages are skipped and reported in
// LoadResult::skipped. Message order is stable: lexicographic by filename
// for eml_dir and maildir, byte order within an mbox.
LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format);

// One line per skipped message, "source_id<TAB>reason".
std::string format_load_manifest(const LoadResult& result);

}  // namespace spearsift
