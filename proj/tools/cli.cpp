#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "scholarviz/config.hpp"
#include "scholarviz/error.hpp"
#include "scholarviz/explorer.hpp"
#include "scholarviz/fixtures.hpp"
#include "scholarviz/http_server.hpp"
#include "scholarviz/query.hpp"
#include "scholarviz/scholars.hpp"
#include "scholarviz/service.hpp"
#include "scholarviz/svg.hpp"
#include "scholarviz/taxonomy.hpp"
#include "scholarviz/wire.hpp"

namespace scholarviz::cli {

namespace {

namespace fs = std::filesystem;

int exit_code_for(const Error& e) { return e.code() == ErrorCode::Io ? kExitIo : kExitValidation; }

bool write_file(const fs::path& path, const std::string& content, std::ostream& err) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) {
        err << "error: cannot write " << path.string() << '\n';
        return false;
    }
    return true;
}

int cmd_validate(const std::string& taxonomy_path, const std::string& scholars_path,
                 std::ostream& out, std::ostream& err) {
    int status = kExitOk;
    auto check = [&](const char* what, const std::string& path, auto&& load) {
        if (path.empty()) return;
        try {
            std::size_t n = load(path);
            out << what << ' ' << path << ": ok (" << n << " records)\n";
        } catch (const Error& e) {
            err << what << ' ' << path << ": " << error_code_name(e.code()) << ": " << e.what()
                << '\n';
            int code = exit_code_for(e);
            if (code > status) status = code;
        }
    };
    check("taxonomy", taxonomy_path, [](const std::string& p) { return Taxonomy::load_file(p).size(); });
    check("scholars", scholars_path,
          [](const std::string& p) { return ScholarIndex::load_file(p).size(); });
    return status;
}

int cmd_serve(const std::string& config_path, std::ostream& out, std::ostream& err) {
    ServiceConfig config;
    try {
        if (!config_path.empty()) config = load_config(config_path);
        apply_env_overrides(config);
        validate_config(config, true);
    } catch (const Error& e) {
        err << "config: " << e.what() << '\n';
        return exit_code_for(e);
    }

    std::unique_ptr<ApiService> api;
    try {
        api = ApiService::from_config(config);
    } catch (const Error& e) {
        err << "data: " << error_code_name(e.code()) << ": " << e.what() << '\n';
        return exit_code_for(e);
    }

    HttpServer server(*api);
    if (server.bind(config.host, config.port) < 0) {
        err << "cannot listen on " << config.host << ':' << config.port << '\n';
        return kExitIo;
    }
    out << "listening on http://" << config.host << ':' << server.port() << '\n' << std::flush;
    server.listen();
    return kExitOk;
}

int cmd_export(const std::string& query, const std::string& choice, const std::string& mode_name,
               const std::string& out_path, std::string json_path, const std::string& config_path,
               std::string taxonomy_path, std::ostream& out, std::ostream& err) {
    ServiceConfig config;
    try {
        if (!config_path.empty()) config = load_config(config_path);
        if (!taxonomy_path.empty()) config.taxonomy_path = taxonomy_path;
        validate_config(config, false);
    } catch (const Error& e) {
        err << "config: " << e.what() << '\n';
        return exit_code_for(e);
    }
    auto mode = parse_layout_mode(mode_name);
    if (!mode) {
        err << "unknown mode '" << mode_name << "'\n";
        return kExitValidation;
    }

    try {
        Taxonomy taxonomy = Taxonomy::load_file(config.taxonomy_path);
        QueryOptions options{config.page_size, config.language};
        ExpandResult result = expand_query(query, taxonomy, options);
        if (result.kind == ResultKind::Expansions) {
            // Abbreviations export the first candidate that exists in the
            // taxonomy unless --choice names one.
            std::optional<std::string> pick;
            if (!choice.empty()) {
                pick = choice;
            } else {
                for (const auto& e : result.expansions)
                    if (e.concept_id) {
                        pick = e.label;
                        break;
                    }
            }
            if (!pick) {
                err << "'" << query << "' has no expansion present in the taxonomy\n";
                return kExitValidation;
            }
            result = resolve_expansion(*pick, taxonomy, options);
        }
        if (result.kind == ResultKind::NotFound) {
            err << "no concept labelled '" << result.query << "'\n";
            return kExitValidation;
        }

        Explorer explorer(taxonomy, ExplorerOptions{config.page_size, config.language, config.canvas});
        ExplorerGraph graph = explorer.start_session(result, *mode);
        LayoutResult layout =
            compute_layout(*mode, explorer.layout_input(graph, config.seed), config.layout);

        if (json_path.empty()) json_path = fs::path(out_path).replace_extension(".json").string();
        if (!write_file(out_path, render_svg(graph, layout, config.canvas), err)) return kExitIo;
        if (!write_file(json_path, wire::dump(wire::layout_result(layout, config.canvas)) + "\n", err))
            return kExitIo;
        out << "wrote " << out_path << " and " << json_path << '\n';
        return kExitOk;
    } catch (const Error& e) {
        err << error_code_name(e.code()) << ": " << e.what() << '\n';
        return exit_code_for(e);
    }
}

int cmd_gen_fixtures(std::uint64_t seed, std::size_t count, const std::string& out_dir,
                     std::ostream& out, std::ostream& err) {
    Taxonomy taxonomy = fixtures::taxonomy();
    std::ostringstream scholars_text;
    write_scholars_jsonl(fixtures::scholars(seed, count), scholars_text);

    fs::path dir(out_dir);
    if (!write_file(dir / "taxonomy.jsonl", std::string(fixtures::taxonomy_jsonl()), err)) return kExitIo;
    if (!write_file(dir / "scholars.jsonl", scholars_text.str(), err)) return kExitIo;
    out << "wrote " << taxonomy.size() << " concepts and " << count << " scholars to "
        << dir.string() << '\n';
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scholar-network visual query service and tools", "scholarviz"};
    app.require_subcommand(1);

    std::string taxonomy_path;
    std::string scholars_path;
    auto* validate = app.add_subcommand("validate", "Check taxonomy and scholar data files");
    validate->add_option("taxonomy", taxonomy_path, "Taxonomy JSON-Lines file")->required();
    validate->add_option("scholars", scholars_path, "Scholars JSON-Lines file");

    std::string serve_config;
    auto* serve = app.add_subcommand("serve", "Run the HTTP API");
    serve->add_option("-c,--config", serve_config, "JSON config file");

    std::string query;
    std::string choice;
    std::string mode = "radial";
    std::string out_path;
    std::string json_path;
    std::string export_config;
    std::string export_taxonomy;
    auto* exp = app.add_subcommand("export", "Lay out the explorer graph for a query as SVG + JSON");
    exp->add_option("query", query, "Keyword to explore")->required();
    exp->add_option("-m,--mode", mode, "radial | horizontal | force")
        ->check(CLI::IsMember({"radial", "horizontal", "force"}));
    exp->add_option("-o,--out", out_path, "SVG output path")->required();
    exp->add_option("--json", json_path, "Layout JSON path (default: --out with .json)");
    exp->add_option("--choice", choice, "Expansion to use when the query is an abbreviation");
    exp->add_option("-c,--config", export_config, "JSON config file");
    exp->add_option("-t,--taxonomy", export_taxonomy, "Taxonomy file (overrides config)");

    std::uint64_t seed = fixtures::kDefaultSeed;
    std::size_t count = fixtures::kDefaultScholarCount;
    std::string out_dir = "data";
    auto* gen = app.add_subcommand("gen-fixtures", "Write the shipped taxonomy and a synthetic scholar corpus");
    gen->add_option("--seed", seed, "Corpus seed");
    gen->add_option("--count", count, "Number of scholars")->check(CLI::PositiveNumber);
    gen->add_option("--out-dir", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help();
        return kExitValidation;
    }

    if (*validate) return cmd_validate(taxonomy_path, scholars_path, out, err);
    if (*serve) return cmd_serve(serve_config, out, err);
    if (*exp)
        return cmd_export(query, choice, mode, out_path, json_path, export_config, export_taxonomy,
                          out, err);
    if (*gen) return cmd_gen_fixtures(seed, count, out_dir, out, err);
    return kExitValidation;
}

}  // namespace scholarviz::cli
