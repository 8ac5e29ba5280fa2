#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "katolab/katolab.hpp"

int main(int argc, char** argv) {
    CLI::App app{"katolab: mild-solution solver and linear-estimate laboratory on the torus"};

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int threads = 1;
    bool expect_failure = false;
    bool validate_only = false;

    app.add_option("--config", config_path, "experiment config JSON")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "RNG seed for probe generation");
    app.add_option("--threads", threads, "worker cap (computation is deterministic regardless)");
    app.add_flag("--expect-failure", expect_failure, "allow configs that violate the scaling identities");
    app.add_flag("--validate-only", validate_only, "only report the identity residuals");

    CLI11_PARSE(app, argc, argv);

    katolab::Json config;
    try {
        std::ifstream f(config_path);
        if (!f) throw katolab::IoError("cannot open config: " + config_path);
        config = katolab::Json::parse(f);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (validate_only) {
        auto diags = katolab::validate(config);
        for (auto& d : diags)
            std::cout << (d.ok ? "ok   " : "FAIL ") << d.identity << "  residual=" << d.residual << "\n";
        for (auto& d : diags)
            if (!d.ok && !expect_failure) return 1;
        return 0;
    }

    katolab::RunOptions opts;
    opts.out_dir = out_dir;
    opts.seed = config.contains("seed") ? config["seed"].get<std::uint64_t>() : seed;
    if (app.count("--seed")) opts.seed = seed;
    opts.threads = threads;
    opts.expect_failure = expect_failure;

    int code = katolab::run(config, opts);
    if (code == 0)
        std::cout << "ok: artifacts in " << out_dir << "\n";
    else if (code == 2)
        std::cerr << "verdict failure: see " << out_dir << "/summary.json\n";
    else
        std::cerr << "error: see " << out_dir << "/error.json\n";
    return code;
}
