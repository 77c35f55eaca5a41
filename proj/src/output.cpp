#include "cytovisc/output.hpp"

#include <fstream>
#include <sstream>

#include "cytovisc/errors.hpp"

namespace cytovisc {
namespace {

std::string existing_hash(std::filesystem::path const& sidecar) {
    std::ifstream in(sidecar);
    if (!in) return {};
    try {
        auto const j = nlohmann::json::parse(in);
        return j.value("manifest_hash", std::string{});
    } catch (nlohmann::json::exception const&) {
        return {};
    }
}

void write_text(std::filesystem::path const& path, std::string const& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << content;
    if (!out) throw InvalidArgument("write failed for " + path.string());
}

}  // namespace

std::filesystem::path manifest_path(std::filesystem::path const& results) {
    return results.string() + ".manifest.json";
}

void write_results_file(std::filesystem::path const& path, std::string const& content, RunManifest const& manifest,
                        bool force) {
    std::string const hash = manifest.hash();
    if (std::filesystem::exists(path) && !force) {
        std::string const previous = existing_hash(manifest_path(path));
        if (previous != hash) {
            throw InvalidArgument(path.string() + " exists with " +
                                  (previous.empty() ? std::string("no manifest") : "manifest " + previous) +
                                  "; refusing to overwrite with manifest " + hash + " (use --force)");
        }
    }
    nlohmann::json sidecar = manifest.to_json(true);
    sidecar["manifest_hash"] = hash;
    write_text(path, content);
    write_text(manifest_path(path), render_json(sidecar));
}

}  // namespace cytovisc
