#include "corpus_gen.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "spearsift/corpus.hpp"
#include "spearsift/errors.hpp"

namespace spearsift::testgen {

namespace {

const char* const kFirstNames[] = {
    "alice", "bruno", "carla", "derek", "elena", "farid", "grace", "henry",
    "ines", "jonas", "karin", "louis", "marta", "nadia", "oscar", "priya",
    "quinn", "rosa", "stefan", "tara", "ulrich", "vera", "wendy", "xavier",
    "yusuf", "zoe", "amir", "bella", "caleb", "dora"};

const char* const kLastNames[] = {
    "almeida", "becker", "costa", "dubois", "evans", "fischer", "garcia",
    "hansen", "ivanov", "jensen", "keller", "lindgren", "moreau", "novak",
    "okafor", "petrov", "quist", "rossi", "schmidt", "tanaka", "ueda",
    "vargas", "weber", "xu", "yilmaz", "zhang", "arnold", "bauer", "clark",
    "dietrich"};

const char* const kDomains[] = {"acmecorp.com",  "globex.net",   "initech.org",
                                "umbrella.co",   "stark-ind.io", "wayneent.com",
                                "tyrellsys.biz", "hooli.dev",    "vandelay.net"};

const char* const kMailers[] = {
    "Microsoft Outlook 16.0",       "Mozilla Thunderbird 91.4",
    "Apple Mail (2.3654.120.41)",   "Mutt/1.10.1 (2018-07-13)",
    "Evolution 3.44.1",             "Postbox 7.0.12",
    "Claws Mail 3.19.1",            "KMail/5.19.3",
    "Sylpheed 3.7.0"};

const char* const kTimezones[] = {"+0000", "-0500", "+1000", "+0100", "-0800",
                                  "+0530", "+0900", "-0300", "+0200"};

const char* const kWeekdays[] = {"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};

const char* const kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                               "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

const char* const kCommonWords[] = {
    "the",     "meeting", "please",  "review",  "attached", "schedule",
    "update",  "project", "report",  "question", "thanks",  "regarding",
    "monday",  "friday",  "deadline", "draft",   "notes",    "call",
    "agenda",  "budget",  "client",  "contract", "approve",  "send",
    "version", "final",   "office",  "team",     "plan",     "status",
    "week",    "next",    "today",   "tomorrow", "morning",  "afternoon",
    "quick",   "short",   "long",    "new",      "old",      "latest",
    "confirm", "details", "numbers", "figures",  "summary",  "follow",
    "action",  "items",   "invoice", "order",    "request",  "issue",
    "server",  "release", "testing", "change",   "paper",    "feedback",
    "time",    "room",    "travel",  "expense",  "policy",   "training",
    "lunch",   "coffee",  "printer", "holiday",  "sign",     "form",
    "copy",    "list",    "link",    "file",     "folder",   "slide",
    "deck",    "quarter", "target",  "goal"};

const char* const kTopicWords[] = {
    "pipeline",  "turbine",   "ledger",     "audit",      "compliance",
    "logistics", "inventory", "shipment",   "warehouse",  "procurement",
    "marketing", "campaign",  "analytics",  "dashboard",  "forecast",
    "payroll",   "benefits",  "recruiting", "onboarding", "workshop",
    "firmware",  "kernel",    "deploy",     "rollback",   "backlog",
    "sprint",    "refactor",  "module",     "database",   "cluster",
    "contract",  "clause",    "liability",  "patent",     "trademark",
    "biopsy",    "reagent",   "assay",      "sample",     "protocol",
    "melange",   "quotient",  "manifold",   "gradient",   "tensor",
    "voltage",   "amplifier", "circuit",    "sensor",     "actuator",
    "cargo",     "customs",   "freight",    "tariff",     "manifest",
    "merger",    "equity",    "dividend",   "portfolio",  "hedge"};

const char* const kJargonWords[] = {
    "synergy",    "leverage",  "bandwidth",  "alignment", "roadmap",
    "milestone",  "deliverable", "stakeholder", "runway",  "headcount",
    "cadence",    "baseline",  "escalation", "handover",  "playbook",
    "guardrail",  "northstar", "flywheel",   "moonshot",  "pivot",
    "standup",    "retro",     "kickoff",    "offsite",   "townhall",
    "okr",        "kpi",       "roi",        "sla",       "eta",
    "asap",       "fyi",       "eod",        "eow",       "cob",
    "ping",       "sync",      "loop",       "thread",    "chase",
    "blocker",    "dependency", "tradeoff",  "scope",     "churn",
    "uplift",     "traction",  "velocity",   "burndown",  "backfill",
    "greenlight", "redline",   "whiteboard", "deepdive",  "takeaway",
    "learnings"};

const char* const kRoleWords[] = {"engineering", "finance", "operations",
                                  "legal",       "research", "sales",
                                  "support",     "facilities"};

// Per-email infrastructure headers with no sender signal. Values are drawn
// uniformly per email from a fixed per-header pool.
const char* const kJunkHeaderNames[] = {
    "x-queue-id",          "x-spam-status",       "x-spam-checker-version",
    "x-virus-scanned",     "x-scanned-by",        "x-mailscanner-id",
    "x-trace",             "x-complaints-to",     "x-abuse-reports-to",
    "x-barracuda-id",      "x-ironport-av",       "x-proofpoint-id",
    "x-ms-exchange-id",    "x-ms-has-attach",     "x-ms-tnef-correlator",
    "x-google-smtp-source", "x-gm-message-state", "x-received-token",
    "received-spf",        "authentication-results", "dkim-filter",
    "arc-seal",            "arc-message-signature", "x-spam-level",
    "x-spam-flag",         "x-bogosity",          "x-pyzor",
    "x-razor-id",          "x-dcc-metrics",       "x-sieve",
    "x-delivery-agent",    "x-mailer-version-hash", "x-envelope-id",
    "x-session-marker",    "x-auth-result",       "x-tls-cipher",
    "x-spam-report-digest", "x-filter-node",      "x-relay-countries",
    "x-batch-id",          "x-campaign-trace",    "x-thread-hash",
    "x-store-shard",       "x-routing-hint",      "x-retention-class",
    "x-quarantine-id",     "x-sandbox-verdict",   "x-content-digest"};

constexpr std::size_t kMaxJunkHeaders =
    sizeof(kJunkHeaderNames) / sizeof(kJunkHeaderNames[0]);

std::string base36(std::uint64_t v, int width) {
    static const char digits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string out(width, '0');
    for (int i = width - 1; i >= 0 && v; --i) {
        out[i] = digits[v % 36];
        v /= 36;
    }
    return out;
}

template <typename T, std::size_t N>
const T& pick(Rng& rng, const T (&pool)[N]) {
    return pool[rng.uniform_index(N)];
}

struct SenderProfile {
    std::string first;
    std::string last;
    std::string address;
    std::string domain;
    std::string display;
    std::vector<std::string> hosts;  // the sender's usual workstations
    std::vector<std::string> ips;
    std::string mailer;      // shared across the sender's domain
    bool mailer_as_user_agent = false;
    std::string timezone;    // shared across the sender's domain
    std::string organization;
    std::string charset;
    std::string phone;
    std::vector<std::string> topics;   // personal topical vocabulary
    std::vector<std::string> jargon;   // shared across the sender's domain
    std::vector<std::pair<std::string, std::string>> recipients;  // display, addr
};

struct RecipientEntry {
    std::string display;
    std::string address;
};

}  // namespace

Corpus make_desk_corpus(const DeskCorpusOptions& options) {
    Rng rng(derive_seed(options.seed, "desk-corpus"));
    const std::size_t domain_count =
        std::min(options.domains, sizeof(kDomains) / sizeof(kDomains[0]));
    const std::size_t junk_count = std::min(options.junk_headers, kMaxJunkHeaders);

    // Per-domain infrastructure: one mail client, one timezone, one relay.
    std::vector<std::string> domain_mailers(domain_count);
    std::vector<std::string> domain_timezones(domain_count);
    for (std::size_t d = 0; d < domain_count; ++d) {
        domain_mailers[d] = kMailers[d % (sizeof(kMailers) / sizeof(kMailers[0]))];
        domain_timezones[d] =
            kTimezones[d % (sizeof(kTimezones) / sizeof(kTimezones[0]))];
    }

    // External recipients plus a handful of org-wide aliases.
    std::vector<RecipientEntry> externals;
    for (std::size_t i = 0; i < 60; ++i) {
        std::string first = kFirstNames[rng.uniform_index(30)];
        std::string last = kLastNames[rng.uniform_index(30)];
        std::string addr = first + "." + last + std::to_string(i) + "@partner" +
                           std::to_string(i % 9) + ".example.com";
        externals.push_back({first + " " + last, addr});
    }
    std::vector<RecipientEntry> shared;
    for (const char* alias : {"team", "all-hands", "announce", "staff", "leads"}) {
        shared.push_back({std::string(alias),
                          std::string(alias) + "@" + kDomains[0]});
    }

    // Sender profiles.
    std::vector<SenderProfile> profiles;
    for (std::size_t s = 0; s < options.senders; ++s) {
        SenderProfile p;
        p.first = kFirstNames[s % 30];
        p.last = kLastNames[(s * 7 + s / 30) % 30];
        const std::size_t d = s % domain_count;
        p.domain = kDomains[d];
        p.address = p.first + "." + p.last + "@" + p.domain;
        p.display = p.first + " " + p.last;
        p.display[0] = static_cast<char>(p.display[0] - 32);
        // Two workstations per sender (office machine and laptop), so the
        // transport fingerprint is stable but not a one-token giveaway.
        for (int w = 0; w < 2; ++w) {
            p.hosts.push_back("wks-" + p.last + std::to_string(s) + "-" +
                              std::to_string(w) + "." + p.domain);
            p.ips.push_back("10." + std::to_string(1 + d) + "." +
                            std::to_string(s / 7 + 10 * w) + "." +
                            std::to_string(10 + s % 200));
        }
        p.mailer = domain_mailers[d];
        p.mailer_as_user_agent = (d % 3 == 2);
        p.timezone = domain_timezones[d];
        p.organization = "org-" + p.domain.substr(0, p.domain.find('.'));
        p.charset = (s % 4 == 0) ? "iso-8859-1" : "us-ascii";
        // Office main line is per domain; only the short extension is the
        // sender's own, and extensions are reused across the org.
        p.phone = "555-010" + std::to_string(d) + " ext " +
                  std::to_string(20 + rng.uniform_index(30));
        for (int t = 0; t < 3; ++t)
            p.topics.push_back(pick(rng, kTopicWords));
        for (int t = 0; t < 8; ++t)
            p.jargon.push_back(kJargonWords[(d * 9 + t) % 56]);
        const RecipientEntry& r1 = externals[rng.uniform_index(externals.size())];
        const RecipientEntry& r2 = externals[rng.uniform_index(externals.size())];
        p.recipients.push_back({r1.display, r1.address});
        p.recipients.push_back({r2.display, r2.address});
        const RecipientEntry& rs = shared[rng.uniform_index(shared.size())];
        p.recipients.push_back({rs.display, rs.address});
        profiles.push_back(std::move(p));
    }

    // Junk value pools.
    std::vector<std::vector<std::string>> junk_pools(junk_count);
    for (std::size_t j = 0; j < junk_count; ++j) {
        junk_pools[j].reserve(options.junk_pool_size);
        for (std::size_t v = 0; v < options.junk_pool_size; ++v)
            junk_pools[j].push_back(std::string(kJunkHeaderNames[j]).substr(2, 4) +
                                    "-" + base36(rng.next() & 0xffffff, 5));
    }

    Corpus corpus;
    corpus.label_kind = LabelKind::benign;
    std::uint64_t message_counter = 0;

    for (std::size_t s = 0; s < options.senders; ++s) {
        const SenderProfile& p = profiles[s];
        const std::size_t count =
            options.min_emails_per_sender +
            rng.uniform_index(options.max_emails_per_sender -
                              options.min_emails_per_sender + 1);
        for (std::size_t e = 0; e < count; ++e) {
            RawEmail email;
            email.source_id = "desk-" + std::to_string(message_counter);

            const std::string date =
                std::string(pick(rng, kWeekdays)) + ", " +
                std::to_string(1 + rng.uniform_index(28)) + " " +
                std::string(pick(rng, kMonths)) + " 200" +
                std::to_string(2 + rng.uniform_index(3)) + " " +
                std::to_string(10 + rng.uniform_index(10)) + ":" +
                std::to_string(10 + rng.uniform_index(50)) + ":" +
                std::to_string(10 + rng.uniform_index(50)) + " " + p.timezone;

            const std::string msg_id =
                base36(++message_counter, 6) + base36(rng.next(), 10);

            const std::size_t workstation = rng.uniform_index(p.hosts.size());
            const std::string& host = p.hosts[workstation];
            const std::string& ip = p.ips[workstation];
            email.headers.emplace_back(
                "received", "from mail." + p.domain + " (mail." + p.domain +
                                " [192.168." + std::to_string(1 + s % 7) +
                                ".1]) by mx.transit-route.net with esmtp; " + date);
            email.headers.emplace_back(
                "received", "from " + host + " (" + host + " [" + ip +
                                "]) by mail." + p.domain + " with esmtp; " + date);

            const auto& rcpt =
                rng.uniform01() < options.shared_recipient_rate
                    ? p.recipients[2]
                    : p.recipients[rng.uniform_index(2)];
            std::string to_value = rcpt.first + " <" + rcpt.second + ">";
            if (rng.uniform01() < 0.3) {
                const auto& second = p.recipients[rng.uniform_index(p.recipients.size())];
                if (second.second != rcpt.second)
                    to_value += ", " + second.first + " <" + second.second + ">";
            }

            email.headers.emplace_back("from", p.display + " <" + p.address + ">");
            email.headers.emplace_back("to", to_value);
            email.headers.emplace_back("subject", [&] {
                std::string subject;
                const std::size_t words = 3 + rng.uniform_index(4);
                for (std::size_t w = 0; w < words; ++w) {
                    if (w) subject += ' ';
                    const double roll = rng.uniform01();
                    if (roll < 0.20)
                        subject += p.topics[rng.uniform_index(p.topics.size())];
                    else if (roll < 0.50)
                        subject += p.jargon[rng.uniform_index(p.jargon.size())];
                    else
                        subject += pick(rng, kCommonWords);
                }
                return subject;
            }());
            email.headers.emplace_back("date", date);
            email.headers.emplace_back("message-id", "<" + msg_id + "@" + host + ">");
            email.headers.emplace_back(p.mailer_as_user_agent ? "user-agent"
                                                              : "x-mailer",
                                       p.mailer);
            email.headers.emplace_back("x-originating-ip", "[" + ip + "]");
            email.headers.emplace_back("organization", p.organization);
            email.headers.emplace_back("mime-version", "1.0");
            email.headers.emplace_back("content-type",
                                       "text/plain; charset=" + p.charset);

            for (std::size_t j = 0; j < junk_count; ++j)
                email.headers.emplace_back(
                    kJunkHeaderNames[j],
                    junk_pools[j][rng.uniform_index(junk_pools[j].size())]);

            std::string body;
            const std::size_t words = 30 + rng.uniform_index(26);
            for (std::size_t w = 0; w < words; ++w) {
                if (w) body += (w % 9 == 0) ? std::string(".\n") : std::string(" ");
                const double roll = rng.uniform01();
                if (roll < 0.52)
                    body += pick(rng, kCommonWords);
                else if (roll < 0.64)
                    body += p.topics[rng.uniform_index(p.topics.size())];
                else if (roll < 0.90)
                    body += p.jargon[rng.uniform_index(p.jargon.size())];
                else
                    body += pick(rng, kRoleWords);
            }
            body += ".\n";
            // The signature block is a habit, not a certainty.
            if (rng.uniform01() < 0.55)
                body += "\nregards " + p.first + " " + p.last + " " + p.phone + "\n";
            email.body = std::move(body);

            email.claimed_sender = p.address;
            corpus.emails.push_back(std::move(email));
        }
    }
    return corpus;
}

void write_eml_dir(const Corpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < corpus.emails.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "%06zu.eml", i);
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw IoError("cannot write " + (dir / name).string());
        out << serialize_email(corpus.emails[i]);
    }
}

std::vector<std::string> random_address_pool(Rng& rng, std::size_t size) {
    std::vector<std::string> pool;
    for (std::size_t i = 0; i < size; ++i) {
        std::string addr = std::string(kFirstNames[rng.uniform_index(30)]) + "." +
                           kLastNames[rng.uniform_index(30)] + std::to_string(i) +
                           "@" + pick(rng, kDomains);
        pool.push_back(std::move(addr));
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    return pool;
}

RawEmail random_email(Rng& rng) {
    RawEmail email;
    const std::string sender = std::string(kFirstNames[rng.uniform_index(30)]) + "." +
                               kLastNames[rng.uniform_index(30)] + "@" +
                               pick(rng, kDomains);
    const std::string recipient = std::string(kFirstNames[rng.uniform_index(30)]) +
                                  "@" + pick(rng, kDomains);

    email.headers.emplace_back("from", sender);
    if (rng.uniform01() < 0.9) {
        std::string to = recipient;
        if (rng.uniform01() < 0.2)
            to += ", " + std::string(kFirstNames[rng.uniform_index(30)]) + "@" +
                  pick(rng, kDomains);
        email.headers.emplace_back("to", to);
    }
    if (rng.uniform01() < 0.4) email.headers.emplace_back("reply-to", sender);
    if (rng.uniform01() < 0.3) email.headers.emplace_back("return-path", "<" + sender + ">");
    if (rng.uniform01() < 0.2) email.headers.emplace_back("sender", sender);
    email.headers.emplace_back("subject", std::string(pick(rng, kCommonWords)) + " " +
                                              pick(rng, kTopicWords));
    email.headers.emplace_back("date", "1 " + std::string(pick(rng, kMonths)) +
                                           " 2003 10:0" +
                                           std::to_string(rng.uniform_index(10)) +
                                           ":00 +0000");
    if (rng.uniform01() < 0.5)
        email.headers.emplace_back("x-mailer", pick(rng, kMailers));

    email.body = std::string(pick(rng, kCommonWords)) + " " +
                 pick(rng, kCommonWords) + " " + pick(rng, kTopicWords);
    email.source_id = "random-" + std::to_string(rng.next() & 0xffffff);
    email.claimed_sender = sender;
    return email;
}

}  // namespace spearsift::testgen
