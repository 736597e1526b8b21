#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <sstream>

#include <dmim/harness.hpp>

using namespace dmim;

TEST_CASE("scheme registry") {
    const std::vector<std::string> expected = {
        "dm-qpsk-conv-const-conv-map",  "dm-qpsk-prop-const-conv-map",
        "dm-qpsk-prop-const-prop-map",  "dm-16qam-conv-const-conv-map",
        "dm-16qam-prop-const-conv-map", "dm-16qam-prop-const-prop-map",
        "ofdm-im-16qam",                "ofdm-16qam",
    };
    REQUIRE(scheme_ids() == expected);

    const int p[] = {10, 10, 10, 18, 18, 18, 10, 16};
    const double se[] = {2.5, 2.5, 2.5, 4.5, 4.5, 4.5, 2.5, 4.0};
    const double eb[] = {1.89282032303, 1.0, 1.0, 4.44444444444, 2.33333333333,
                         2.33333333333, 2.0, 2.5};
    for (std::size_t i = 0; i < expected.size(); ++i) {
        INFO(expected[i]);
        Scheme s = make_scheme(expected[i]);
        REQUIRE(s.id == expected[i]);
        REQUIRE(s.cfg.p == p[i]);
        REQUIRE(spectral_efficiency(s) == Catch::Approx(se[i]).margin(1e-12));
        REQUIRE(s.eb == Catch::Approx(eb[i]).margin(1e-9));
    }
    REQUIRE_THROWS_AS(make_scheme("dm-8psk"), std::invalid_argument);
}

TEST_CASE("ebn0 grid specs") {
    REQUIRE(parse_ebn0_spec("0:5:30") == std::vector<double>{0, 5, 10, 15, 20, 25, 30});
    REQUIRE(parse_ebn0_spec("0:2.5:10") == std::vector<double>{0, 2.5, 5, 7.5, 10});
    REQUIRE(parse_ebn0_spec("12") == std::vector<double>{12});
    REQUIRE(parse_ebn0_spec("1,3,9.5") == std::vector<double>{1, 3, 9.5});
    REQUIRE(parse_ebn0_spec("7:10:7") == std::vector<double>{7});
    REQUIRE_THROWS_AS(parse_ebn0_spec("0:5"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_ebn0_spec("0:0:10"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_ebn0_spec("10:5:0"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_ebn0_spec("a,b"), std::invalid_argument);
}

TEST_CASE("plan validation") {
    SimulationPlan ok;
    REQUIRE_NOTHROW(validate_plan(ok));

    SimulationPlan p = ok;
    p.scheme_id = "nope";
    REQUIRE_THROWS_AS(validate_plan(p), std::invalid_argument);
    p = ok;
    p.ebn0_grid_db = {};
    REQUIRE_THROWS_AS(validate_plan(p), std::invalid_argument);
    p = ok;
    p.ebn0_grid_db = {10, 5};
    REQUIRE_THROWS_AS(validate_plan(p), std::invalid_argument);
    p = ok;
    p.max_groups = 0;
    REQUIRE_THROWS_AS(validate_plan(p), std::invalid_argument);
    p = ok;
    p.target_errors = 0;
    REQUIRE_THROWS_AS(validate_plan(p), std::invalid_argument);
    p = ok;
    p.workers = 0;
    REQUIRE_THROWS_AS(validate_plan(p), std::invalid_argument);
}

TEST_CASE("config text round trips") {
    SimulationPlan defaults;
    REQUIRE(parse_config(format_config(defaults)) == defaults);

    SimulationPlan plan;
    plan.scheme_id = "dm-16qam-prop-const-prop-map";
    plan.ebn0_grid_db = {0, 7.5, 15};
    plan.max_groups = 4096;
    plan.target_errors = 123;
    plan.seed = 987654321;
    plan.workers = 4;
    plan.noiseless = true;
    plan.timing = true;
    plan.out = "curve.csv";
    REQUIRE(parse_config(format_config(plan)) == plan);
}

TEST_CASE("config parsing details") {
    SimulationPlan plan = parse_config(
        "# comment line\r\n"
        "scheme=ofdm-16qam\r\n"
        "\r\n"
        "seed=9\n"
        "ebn0=0:10:20\n");
    REQUIRE(plan.scheme_id == "ofdm-16qam");
    REQUIRE(plan.seed == 9);
    REQUIRE(plan.ebn0_grid_db == std::vector<double>{0, 10, 20});
    REQUIRE(plan.max_groups == SimulationPlan{}.max_groups);

    REQUIRE_THROWS_WITH(parse_config("bogus=1\n"),
                        Catch::Matchers::ContainsSubstring("bogus"));
    REQUIRE_THROWS_AS(parse_config("just a line\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_config("workers=two\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_config("noiseless=maybe\n"), std::invalid_argument);
}

TEST_CASE("csv round trip") {
    std::vector<BerRecord> records;
    records.push_back(BerRecord{"dm-qpsk-conv-const-conv-map", 0.0, 10240, 981,
                                981.0 / 10240.0, 1024, 7, 0.0, false});
    records.push_back(BerRecord{"dm-qpsk-conv-const-conv-map", 42.5, 5120, 0, 0.0, 512, 7, 0.0,
                                true});
    std::ostringstream os;
    write_csv(records, os);
    std::string text = os.str();
    REQUIRE(text.substr(0, text.find('\n')) == csv_header());
    REQUIRE(text.find("\r") == std::string::npos);

    std::istringstream is(text);
    std::vector<BerRecord> back = read_csv(is);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        REQUIRE(back[i].scheme == records[i].scheme);
        REQUIRE(back[i].ebn0_db == records[i].ebn0_db);
        REQUIRE(back[i].bits == records[i].bits);
        REQUIRE(back[i].errors == records[i].errors);
        REQUIRE(back[i].ber == records[i].ber);
        REQUIRE(back[i].groups == records[i].groups);
        REQUIRE(back[i].seed == records[i].seed);
        REQUIRE(back[i].elapsed_s == records[i].elapsed_s);
        REQUIRE(back[i].censored == records[i].censored);
    }
}

TEST_CASE("csv rejects malformed input") {
    std::istringstream bad_header("scheme,ebn0_db\nx,0\n");
    REQUIRE_THROWS_AS(read_csv(bad_header), std::invalid_argument);
    std::istringstream short_row(std::string(csv_header()) + "\nx,0,100,5,0.05\n");
    REQUIRE_THROWS_AS(read_csv(short_row), std::invalid_argument);
    std::istringstream inconsistent(std::string(csv_header()) + "\nx,0,10,20,2,1,1,0\n");
    REQUIRE_THROWS_AS(read_csv(inconsistent), std::invalid_argument);
    std::istringstream bad_number(std::string(csv_header()) + "\nx,zero,10,2,0.2,1,1,0\n");
    REQUIRE_THROWS_AS(read_csv(bad_number), std::invalid_argument);
}

TEST_CASE("noiseless points are error free and censored") {
    SimulationPlan plan;
    plan.scheme_id = "dm-16qam-prop-const-prop-map";
    plan.noiseless = true;
    plan.max_groups = 600;
    plan.seed = 3;
    BerRecord rec = run_point(plan, 20.0);
    REQUIRE(rec.errors == 0);
    REQUIRE(rec.ber == 0.0);
    REQUIRE(rec.censored);
    REQUIRE(rec.groups == 600);
    REQUIRE(rec.bits == 600 * 18);
    REQUIRE(rec.elapsed_s == 0.0);
}

TEST_CASE("early stop lands on a block boundary") {
    SimulationPlan plan;
    plan.scheme_id = "dm-qpsk-conv-const-conv-map";
    plan.max_groups = 100000;
    plan.target_errors = 500;
    plan.seed = 11;
    BerRecord rec = run_point(plan, 0.0);
    REQUIRE(rec.errors >= 500);
    REQUIRE(rec.groups < plan.max_groups);
    REQUIRE(rec.groups % 512 == 0);
    REQUIRE(rec.ber > 0.0);
    REQUIRE(rec.ber < 0.5);
    REQUIRE_FALSE(rec.censored);
}

TEST_CASE("sweeps are byte-identical across worker counts and reruns") {
    SimulationPlan plan;
    plan.scheme_id = "dm-qpsk-prop-const-prop-map";
    plan.ebn0_grid_db = {0, 25};
    plan.max_groups = 2048;
    plan.target_errors = 400;
    plan.seed = 99;

    auto render = [](const std::vector<BerRecord>& recs) {
        std::ostringstream os;
        write_csv(recs, os);
        return os.str();
    };

    plan.workers = 1;
    std::string serial = render(run_sweep(plan));
    std::string serial_again = render(run_sweep(plan));
    plan.workers = 3;
    std::string parallel = render(run_sweep(plan));

    REQUIRE(serial == serial_again);
    REQUIRE(serial == parallel);

    // and the records cover the requested grid in order
    std::istringstream is(serial);
    std::vector<BerRecord> recs = read_csv(is);
    REQUIRE(recs.size() == 2);
    REQUIRE(recs[0].ebn0_db == 0.0);
    REQUIRE(recs[1].ebn0_db == 25.0);
    REQUIRE(recs[0].scheme == plan.scheme_id);
    REQUIRE(recs[0].seed == plan.seed);
    REQUIRE(recs[0].ber > recs[1].ber);
}

TEST_CASE("block engine matches the public per-group chain") {
    // detail::simulate_block is an allocation-free transcription of
    // modulate -> channel -> detect_low_complexity_ml -> demap; its error
    // counts must equal running the public functions with the same streams.
    SimulationPlan plan;
    plan.seed = 31;
    const double points_db[] = {0.0, 10.0, 25.0};
    for (const std::string& id : scheme_ids()) {
        INFO(id);
        plan.scheme_id = id;
        Scheme s = make_scheme(id);
        for (double ebn0_db : points_db) {
            for (std::int64_t block : {std::int64_t{0}, std::int64_t{3}}) {
                const std::int64_t groups = 512;
                std::int64_t fast = detail::simulate_block(s, plan, ebn0_db, block, groups);

                RandomStream bit_rng({plan.seed, fnv1a64(id),
                                      std::bit_cast<std::uint64_t>(ebn0_db),
                                      static_cast<std::uint64_t>(block), 0});
                RandomStream cfr_rng({plan.seed, fnv1a64(id),
                                      std::bit_cast<std::uint64_t>(ebn0_db),
                                      static_cast<std::uint64_t>(block), 1});
                RandomStream noise_rng({plan.seed, fnv1a64(id),
                                        std::bit_cast<std::uint64_t>(ebn0_db),
                                        static_cast<std::uint64_t>(block), 2});
                NoiseSpec noise = n0_from_ebn0(s.eb, ebn0_db);
                Bits b(static_cast<std::size_t>(s.cfg.p));
                std::int64_t ref = 0;
                for (std::int64_t g = 0; g < groups; ++g) {
                    for (auto& bit : b) bit = bit_rng.next_bit();
                    GroupSymbols x = modulate(b, s.cfg);
                    ChannelRealization cfr = sample_cfr(s.cfg.n, cfr_rng);
                    std::vector<Complex> w = sample_awgn(s.cfg.n, noise, noise_rng);
                    std::vector<Complex> y = apply_channel(x.x, cfr, w);
                    GroupSymbols xhat = detect_low_complexity_ml(y, cfr.h, s.cfg);
                    ref += static_cast<std::int64_t>(hamming_distance(b, demap(xhat, s.cfg)));
                }
                REQUIRE(fast == ref);
            }
        }
    }
}

TEST_CASE("standard error and monotonicity warnings") {
    BerRecord a{"s", 0.0, 1000000, 100000, 0.1, 100000, 1, 0.0, false};
    BerRecord b{"s", 10.0, 1000000, 200000, 0.2, 100000, 1, 0.0, false};
    REQUIRE(binomial_standard_error(a) ==
            Catch::Approx(std::sqrt(0.1 * 0.9 / 1e6)).epsilon(1e-12));
    REQUIRE(monotonicity_warnings({a, b}).size() == 1);
    REQUIRE(monotonicity_warnings({b, a}).empty());
    REQUIRE(monotonicity_warnings({a}).empty());
    // different schemes are never compared
    BerRecord c = b;
    c.scheme = "t";
    REQUIRE(monotonicity_warnings({a, c}).empty());
}

TEST_CASE("number formatting round trips") {
    for (double v : {0.0, 1.0, 0.1, 2.5, 1e-7, 3.141592653589793, 1.0 / 3.0}) {
        REQUIRE(parse_double(format_double(v)) == v);
    }
    REQUIRE(format_double(0.0) == "0");
    REQUIRE_THROWS_AS(parse_double("1.2.3"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_double(""), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_integer<int>("12x"), std::invalid_argument);
}
