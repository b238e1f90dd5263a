#include "labelrefine/corpus.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace lr {

namespace {

std::string pair_name(int id, const char* kind) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%05d_%s.png", id, kind);
    return buf;
}

void write_manifest(const std::string& dir, const std::vector<CorpusEntry>& entries) {
    std::ofstream out(dir + "/manifest.tsv", std::ios::binary);
    if (!out) throw DataError("cannot write manifest in " + dir);
    out << "id\tsource\tx0\ty0\tside\tseed\tnoise_seed\toplog\n";
    for (const CorpusEntry& e : entries) {
        out << e.id << '\t' << e.source << '\t' << e.rect.x0 << '\t' << e.rect.y0 << '\t'
            << e.rect.side << '\t' << e.seed << '\t';
        if (e.noise_seed)
            out << *e.noise_seed;
        else
            out << '-';
        out << '\t' << (e.oplog.empty() ? "-" : e.oplog) << '\n';
    }
}

void prepare_dir(const std::string& dir) {
    fs::create_directories(fs::path(dir) / "pairs");
}

uint64_t parse_u64(const std::string& s, const std::string& ctx) {
    uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw DataError("manifest: bad integer '" + s + "' in " + ctx);
    return v;
}

} // namespace

bool Corpus::has_noisy() const {
    for (const CorpusEntry& e : entries)
        if (!e.noise_seed) return false;
    return !entries.empty();
}

std::string Corpus::image_path(int idx) const {
    return dir + "/pairs/" + pair_name(entries[idx].id, "img");
}
std::string Corpus::clean_path(int idx) const {
    return dir + "/pairs/" + pair_name(entries[idx].id, "clean");
}
std::string Corpus::noisy_path(int idx) const {
    return dir + "/pairs/" + pair_name(entries[idx].id, "noisy");
}

void write_corpus(const std::string& dir, const std::vector<SynthSample>& samples) {
    prepare_dir(dir);
    std::vector<CorpusEntry> entries;
    for (size_t i = 0; i < samples.size(); ++i) {
        const SynthSample& s = samples[i];
        int id = static_cast<int>(i);
        save_image(dir + "/pairs/" + pair_name(id, "img"), s.image);
        save_label(dir + "/pairs/" + pair_name(id, "clean"), s.clean);
        CorpusEntry e;
        e.id = id;
        e.source = "synth";
        e.rect = {0, 0, s.clean.width()};
        e.seed = s.sample_seed;
        entries.push_back(std::move(e));
    }
    write_manifest(dir, entries);
}

void write_corpus(const std::string& dir, const std::vector<PatchPair>& pairs) {
    prepare_dir(dir);
    std::vector<CorpusEntry> entries;
    for (size_t i = 0; i < pairs.size(); ++i) {
        const PatchPair& p = pairs[i];
        int id = static_cast<int>(i);
        save_image(dir + "/pairs/" + pair_name(id, "img"), p.image);
        save_label(dir + "/pairs/" + pair_name(id, "clean"), p.clean);
        save_label(dir + "/pairs/" + pair_name(id, "noisy"), p.noisy);
        CorpusEntry e;
        e.id = id;
        e.source = p.source.empty() ? "-" : p.source;
        e.rect = p.rect;
        e.noise_seed = p.noise_seed;
        e.oplog = p.oplog;
        entries.push_back(std::move(e));
    }
    write_manifest(dir, entries);
}

void write_corpus(const std::string& dir, const std::vector<MinedPatch>& patches,
                  const std::vector<std::string>& sources,
                  const std::vector<uint64_t>& seeds) {
    if (patches.size() != sources.size() || patches.size() != seeds.size())
        throw DataError("write_corpus: provenance length mismatch");
    prepare_dir(dir);
    std::vector<CorpusEntry> entries;
    for (size_t i = 0; i < patches.size(); ++i) {
        int id = static_cast<int>(i);
        save_image(dir + "/pairs/" + pair_name(id, "img"), patches[i].image);
        save_label(dir + "/pairs/" + pair_name(id, "clean"), patches[i].label);
        CorpusEntry e;
        e.id = id;
        e.source = sources[i];
        e.rect = patches[i].rect;
        e.seed = seeds[i];
        entries.push_back(std::move(e));
    }
    write_manifest(dir, entries);
}

Corpus load_corpus(const std::string& dir) {
    std::ifstream in(dir + "/manifest.tsv", std::ios::binary);
    if (!in) throw DataError("no manifest.tsv in " + dir);
    Corpus corpus;
    corpus.dir = dir;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ss(line);
        std::string f[8];
        for (int i = 0; i < 8; ++i)
            if (!std::getline(ss, f[i], '\t'))
                throw DataError("manifest: short row in " + dir);
        CorpusEntry e;
        e.id = static_cast<int>(parse_u64(f[0], dir));
        e.source = f[1];
        e.rect.x0 = static_cast<int>(parse_u64(f[2], dir));
        e.rect.y0 = static_cast<int>(parse_u64(f[3], dir));
        e.rect.side = static_cast<int>(parse_u64(f[4], dir));
        e.seed = parse_u64(f[5], dir);
        if (f[6] != "-") e.noise_seed = parse_u64(f[6], dir);
        if (f[7] != "-") e.oplog = f[7];
        corpus.entries.push_back(std::move(e));
    }
    return corpus;
}

LoadedPair load_pair(const Corpus& corpus, int idx, bool want_noisy) {
    LoadedPair p;
    p.image = load_image(corpus.image_path(idx));
    p.clean = load_label(corpus.clean_path(idx));
    if (want_noisy) {
        if (!corpus.entries[idx].noise_seed)
            throw DataError("corpus entry has no noisy map: " + corpus.noisy_path(idx));
        p.noisy = load_label(corpus.noisy_path(idx));
    }
    return p;
}

std::vector<PatchPair> load_pairs(const Corpus& corpus) {
    std::vector<PatchPair> out;
    out.reserve(corpus.entries.size());
    for (size_t i = 0; i < corpus.entries.size(); ++i) {
        LoadedPair lp = load_pair(corpus, static_cast<int>(i), true);
        PatchPair p;
        p.image = std::move(lp.image);
        p.clean = std::move(lp.clean);
        p.noisy = std::move(lp.noisy);
        p.source = corpus.entries[i].source;
        p.rect = corpus.entries[i].rect;
        p.noise_seed = corpus.entries[i].noise_seed.value_or(0);
        p.oplog = corpus.entries[i].oplog;
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace lr
