#include "spearsift/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "spearsift/errors.hpp"

namespace spearsift {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    return out;
}

// Best-effort ASCII decoding: CRLF and bare CR become LF, tab and printable
// ASCII pass through, everything else is replaced, never dropped.
std::string decode_bytes(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        char c = raw[i];
        if (c == '\r') {
            if (i + 1 < raw.size() && raw[i + 1] == '\n') continue;
            out.push_back('\n');
        } else if (c == '\n' || c == '\t') {
            out.push_back(c);
        } else if (static_cast<unsigned char>(c) >= 0x20 &&
                   static_cast<unsigned char>(c) <= 0x7e) {
            out.push_back(c);
        } else {
            out.push_back('?');
        }
    }
    return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

}  // namespace

const std::string* RawEmail::find_header(std::string_view name) const {
    for (const auto& [field, value] : headers)
        if (field == name) return &value;
    return nullptr;
}

std::string_view attack_kind_name(AttackKind kind) {
    switch (kind) {
        case AttackKind::blind_spoofing: return "blind_spoofing";
        case AttackKind::known_domain: return "known_domain";
        case AttackKind::known_sender: return "known_sender";
    }
    return "unknown";
}

AttackKind attack_kind_from_name(std::string_view name) {
    for (AttackKind kind : kAllAttackKinds)
        if (attack_kind_name(kind) == name) return kind;
    throw InvalidConfig("unknown attack kind: " + std::string(name));
}

std::string_view corpus_format_name(CorpusFormat format) {
    switch (format) {
        case CorpusFormat::mbox: return "mbox";
        case CorpusFormat::maildir: return "maildir";
        case CorpusFormat::eml_dir: return "eml_dir";
    }
    return "unknown";
}

CorpusFormat corpus_format_from_name(std::string_view name) {
    if (name == "mbox") return CorpusFormat::mbox;
    if (name == "maildir") return CorpusFormat::maildir;
    if (name == "eml_dir" || name == "eml") return CorpusFormat::eml_dir;
    throw InvalidConfig("unknown corpus format: " + std::string(name));
}

std::string normalize_sender(std::string_view from_value) {
    auto validate = [](std::string_view candidate) -> std::string {
        std::string_view s = trim(candidate);
        while (!s.empty() && (s.front() == '<' || s.front() == '"' ||
                              s.front() == '\'' || s.front() == '('))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == '>' || s.back() == '"' ||
                              s.back() == '\'' || s.back() == ')' ||
                              s.back() == ',' || s.back() == ';' ||
                              s.back() == '.'))
            s.remove_suffix(1);
        std::size_t at = s.find('@');
        if (at == std::string_view::npos) return {};
        if (at == 0 || at + 1 == s.size()) return {};
        if (s.find('@', at + 1) != std::string_view::npos) return {};
        return to_lower(s);
    };

    // Angle-bracket form wins over anything in the display name.
    std::size_t open = from_value.rfind('<');
    if (open != std::string_view::npos) {
        std::size_t close = from_value.find('>', open + 1);
        std::string_view inside = close == std::string_view::npos
                                      ? from_value.substr(open + 1)
                                      : from_value.substr(open + 1, close - open - 1);
        std::string addr = validate(inside);
        if (!addr.empty()) return addr;
    }

    // Otherwise, the first whitespace/comma-delimited token with one '@'.
    std::size_t start = 0;
    while (start < from_value.size()) {
        std::size_t end = from_value.find_first_of(" \t,;", start);
        if (end == std::string_view::npos) end = from_value.size();
        if (end > start) {
            std::string addr = validate(from_value.substr(start, end - start));
            if (!addr.empty()) return addr;
        }
        start = end + 1;
    }
    throw MissingSender("no address found in: " + std::string(from_value));
}

RawEmail parse_email(std::string_view raw_bytes, std::string source_id) {
    if (raw_bytes.empty()) throw ParseError("empty message: " + source_id);

    const std::string decoded = decode_bytes(raw_bytes);
    const std::vector<std::string_view> lines = split_lines(decoded);

    RawEmail email;
    email.source_id = std::move(source_id);

    std::size_t body_start = lines.size();  // line index after the separator
    bool saw_separator = false;
    bool saw_colon = false;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        if (line.empty()) {
            saw_separator = true;
            body_start = i + 1;
            break;
        }
        if (is_space(line.front())) {
            // Continuation of the previous field value.
            if (!email.headers.empty()) {
                std::string& value = email.headers.back().second;
                if (!value.empty()) value.push_back(' ');
                value.append(trim(line));
            }
            continue;
        }
        std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) continue;  // malformed, skip
        saw_colon = true;
        std::string name = to_lower(trim(line.substr(0, colon)));
        if (name.empty()) continue;
        std::string_view value = line.substr(colon + 1);
        while (!value.empty() && is_space(value.front())) value.remove_prefix(1);
        email.headers.emplace_back(std::move(name), std::string(value));
    }

    if (!saw_separator && !saw_colon)
        throw ParseError("no header/body separator and no ':' line: " +
                         email.source_id);
    if (email.headers.empty())
        throw ParseError("no header fields: " + email.source_id);

    if (saw_separator && body_start < lines.size()) {
        std::string body;
        for (std::size_t i = body_start; i < lines.size(); ++i) {
            if (i > body_start) body.push_back('\n');
            body.append(lines[i]);
        }
        email.body = std::move(body);
    }

    const std::string* from = email.find_header("from");
    if (!from) throw MissingSender("no From field: " + email.source_id);
    email.claimed_sender = normalize_sender(*from);
    return email;
}

std::string serialize_email(const RawEmail& email) {
    std::string out;
    for (const auto& [name, value] : email.headers) {
        out += name;
        out += ": ";
        out += value;
        out += '\n';
    }
    out += '\n';
    out += email.body;
    return out;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void parse_into(LoadResult& result, std::string_view bytes, std::string source_id) {
    try {
        result.corpus.emails.push_back(parse_email(bytes, source_id));
    } catch (const Error& e) {
        result.skipped.push_back({std::move(source_id), e.what()});
    }
}

void load_mbox(LoadResult& result, const std::filesystem::path& path) {
    const std::string content = decode_bytes(read_file(path));
    const std::string file_name = path.filename().string();

    // Envelope "From " at line start opens a new message; the envelope line
    // itself is not part of the message.
    std::vector<std::pair<std::size_t, std::size_t>> spans;  // (offset, end)
    std::size_t line_start = 0;
    std::size_t current = std::string::npos;
    auto close_span = [&](std::size_t end) {
        if (current != std::string::npos && end > current)
            spans.emplace_back(current, end);
    };
    while (line_start < content.size()) {
        std::size_t nl = content.find('\n', line_start);
        if (content.compare(line_start, 5, "From ") == 0) {
            close_span(line_start);
            current = nl == std::string::npos ? content.size() : nl + 1;
        } else if (current == std::string::npos && line_start == 0) {
            // Tolerate content before the first envelope line.
            current = 0;
        }
        if (nl == std::string::npos) break;
        line_start = nl + 1;
    }
    close_span(content.size());

    for (const auto& [offset, end] : spans) {
        std::string_view chunk(content.data() + offset, end - offset);
        if (trim(chunk).empty() && chunk.find('\n') == std::string_view::npos)
            continue;
        parse_into(result, chunk, file_name + "@" + std::to_string(offset));
    }
}

void load_message_files(LoadResult& result, const std::filesystem::path& root,
                        std::vector<std::filesystem::path> relative_paths) {
    std::sort(relative_paths.begin(), relative_paths.end(),
              [](const auto& a, const auto& b) { return a.generic_string() < b.generic_string(); });
    for (const auto& rel : relative_paths) {
        std::string bytes;
        std::string id = rel.generic_string();
        try {
            bytes = read_file(root / rel);
        } catch (const Error& e) {
            result.skipped.push_back({std::move(id), e.what()});
            continue;
        }
        parse_into(result, bytes, std::move(id));
    }
}

}  // namespace

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    namespace fs = std::filesystem;
    LoadResult result;
    result.corpus.label_kind = LabelKind::benign;

    std::error_code ec;
    switch (format) {
        case CorpusFormat::mbox: {
            if (!fs::is_regular_file(path, ec))
                throw IoError("mbox path is not a file: " + path.string());
            load_mbox(result, path);
            break;
        }
        case CorpusFormat::maildir: {
            if (!fs::is_directory(path, ec))
                throw IoError("maildir path is not a directory: " + path.string());
            std::vector<fs::path> rel;
            for (const char* sub : {"cur", "new"}) {
                fs::path dir = path / sub;
                if (!fs::is_directory(dir, ec)) continue;
                for (const auto& entry : fs::directory_iterator(dir)) {
                    if (entry.is_regular_file())
                        rel.push_back(fs::path(sub) / entry.path().filename());
                }
            }
            if (rel.empty())
                throw IoError("maildir has no cur/ or new/ messages: " + path.string());
            load_message_files(result, path, std::move(rel));
            break;
        }
        case CorpusFormat::eml_dir: {
            if (!fs::is_directory(path, ec))
                throw IoError("eml_dir path is not a directory: " + path.string());
            std::vector<fs::path> rel;
            for (const auto& entry : fs::directory_iterator(path)) {
                if (entry.is_regular_file() && entry.path().extension() == ".eml")
                    rel.push_back(entry.path().filename());
            }
            load_message_files(result, path, std::move(rel));
            break;
        }
    }

    if (result.corpus.emails.empty())
        throw EmptyCorpus("no messages parsed from " + path.string() + " (" +
                          std::to_string(result.skipped.size()) + " skipped)");
    return result;
}

std::string format_load_manifest(const LoadResult& result) {
    std::string out;
    out += "loaded\t" + std::to_string(result.corpus.emails.size()) + "\n";
    out += "skipped\t" + std::to_string(result.skipped.size()) + "\n";
    for (const auto& skip : result.skipped)
        out += skip.source_id + "\t" + skip.reason + "\n";
    return out;
}

}  // namespace spearsift
