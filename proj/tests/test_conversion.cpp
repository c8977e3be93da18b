#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace shapesym;
using fixtures::pic2;
using fixtures::word_of;

namespace {

Part2Pipeline running_pipeline() {
    auto dfao = complete_pad_loops(fixtures::four_state_dfao(), "#");
    return run_part2(dfao, fixtures::padded_no_bb_dfa(), OrderedAlphabet({"#", "a", "b"}), 2);
}

MorphicPresentation running_presentation() {
    std::map<Symbol, Symbol> id;
    for (const auto& l : fixtures::running_morphism().letters()) id[l] = l;
    return MorphicPresentation{fixtures::running_morphism(), "a", id};
}

// numeration system over {ε} ∪ 1{0,1}*
NumerationSystem base2_system() {
    Dfa lang;
    int s0 = lang.add_state("s0", true);
    int s1 = lang.add_state("s1", true);
    lang.set_initial(s0);
    lang.add_transition(s0, {"1"}, s1);
    lang.add_transition(s1, {"0"}, s1);
    lang.add_transition(s1, {"1"}, s1);
    return NumerationSystem(OrderedAlphabet({"0", "1"}), lang);
}

// two-state DFAO computing the parity of the number of 1 digits
AutomaticPresentation parity_presentation() {
    Dfao d;
    int t0 = d.m.add_state("t0", false);
    int t1 = d.m.add_state("t1", false);
    d.m.set_initial(t0);
    d.outputs = {"0", "1"};
    d.m.add_transition(t0, {"0"}, t0);
    d.m.add_transition(t0, {"1"}, t1);
    d.m.add_transition(t1, {"0"}, t1);
    d.m.add_transition(t1, {"1"}, t0);
    d.m.add_transition(t0, {"#"}, t0);
    d.m.add_transition(t1, {"#"}, t1);
    return AutomaticPresentation{base2_system(), std::move(d), "#", 1};
}

// words of even length over {a}; its product pipeline needs a second power
AutomaticPresentation even_length_presentation(int dims) {
    Dfa lang;
    int e0 = lang.add_state("e0", true);
    int e1 = lang.add_state("e1", false);
    lang.set_initial(e0);
    lang.add_transition(e0, {"a"}, e1);
    lang.add_transition(e1, {"a"}, e0);
    NumerationSystem evens(OrderedAlphabet({"a"}), lang);

    Dfao flip;
    int t0 = flip.m.add_state("t0", false);
    int t1 = flip.m.add_state("t1", false);
    flip.m.set_initial(t0);
    flip.outputs = {"0", "1"};
    Shape box(dims, 2);
    std::vector<Symbol> padded{"#", "a"};
    Label all_pad(dims, "#");
    for_each_coord(box, [&](std::span<const int> idx) {
        Label l(dims);
        for (int i = 0; i < dims; ++i) l[i] = padded[idx[i]];
        if (l == all_pad) return;
        flip.m.add_transition(t0, l, t1);
        flip.m.add_transition(t1, l, t0);
    });
    flip.m.add_transition(t0, all_pad, t0);
    flip.m.add_transition(t1, all_pad, t1);
    return AutomaticPresentation{std::move(evens), std::move(flip), "#", dims};
}

LetterType type_table_2d(LetterType tk, LetterType tl) {
    if (tk == LetterType::Dead || tl == LetterType::Dead) return LetterType::Dead;
    if (tk == LetterType::Moribund || tl == LetterType::Moribund) {
        bool k_ok = tk == LetterType::Moribund || tk == LetterType::RobustFinal;
        bool l_ok = tl == LetterType::Moribund || tl == LetterType::RobustFinal;
        return k_ok && l_ok ? LetterType::Moribund : LetterType::Dead;
    }
    if (tk == LetterType::RobustNonFinal || tl == LetterType::RobustNonFinal)
        return LetterType::RobustNonFinal;
    return LetterType::RobustFinal;
}

} // namespace

TEST_CASE("classify_letters by occurrence outside psi") {
    // a two-cycle inside psi is dead
    auto swap2 = make_uni_morphism({{"x", word_of("y")}, {"y", word_of("x")}});
    auto types = classify_letters(swap2, {"x", "y"});
    CHECK(types.at("x") == LetterType::Dead);
    CHECK(types.at("y") == LetterType::Dead);

    // one letter escapes once, then everything stays inside psi
    auto fade = make_uni_morphism({{"x", word_of("y")}, {"y", word_of("y")}});
    types = classify_letters(fade, {"y"});
    CHECK(types.at("x") == LetterType::Moribund);
    CHECK(types.at("y") == LetterType::Dead);

    // alternating escapes are robust
    auto cyc = make_uni_morphism(
        {{"a", word_of("b")}, {"b", word_of("ac")}, {"c", word_of("b")}});
    types = classify_letters(cyc, {"a", "b"});
    CHECK(types.at("a") == LetterType::RobustNonFinal);
    CHECK(types.at("b") == LetterType::RobustNonFinal);
    CHECK(types.at("c") == LetterType::RobustFinal);
}

TEST_CASE("stabilizing_power is minimal and verified") {
    auto cyc = make_uni_morphism(
        {{"a", word_of("b")}, {"b", word_of("ac")}, {"c", word_of("b")}});
    std::set<Symbol> psi{"a", "b"};
    int t = stabilizing_power(cyc, psi);
    CHECK(t == 2);
    CHECK(oracles::verify_stabilizing_power(cyc, psi, t));
    CHECK_FALSE(oracles::verify_stabilizing_power(cyc, psi, 1));

    // everything robust at every step: the first power works
    auto uni = make_uni_morphism({{"x", word_of("xy")}, {"y", word_of("x")}});
    CHECK(stabilizing_power(uni, {"y"}) == 1);

    auto pipe = running_pipeline();
    CHECK(pipe.power == 1);
    std::set<Symbol> pipe_psi;
    for (int q = 0; q < pipe.prod.dfao.m.n_states(); ++q)
        if (!pipe.prod.dfao.m.is_final(q)) pipe_psi.insert(pipe.prod.dfao.m.state_name(q));
    CHECK(oracles::verify_stabilizing_power(pipe.mu_p, pipe_psi, 1));
}

TEST_CASE("state_type inspects one-step acceptance") {
    Dfa lang = fixtures::padded_no_bb_dfa();
    CHECK(state_type(lang, lang.state("l")) == LetterType::Dead);
    CHECK(state_type(lang, lang.state("g")) == LetterType::RobustFinal);
    CHECK(state_type(lang, lang.state("h")) == LetterType::RobustFinal);
    CHECK(state_type(lang, lang.state("k")) == LetterType::RobustFinal);

    Dfa moribund;
    int f = moribund.add_state("f", true);
    int dead = moribund.add_state("dead", false);
    moribund.set_initial(f);
    moribund.add_transition(f, {"a"}, dead);
    moribund.add_transition(dead, {"a"}, dead);
    CHECK(state_type(moribund, f) == LetterType::Moribund);
    CHECK(state_type(moribund, dead) == LetterType::Dead);

    Dfa reach;
    int u = reach.add_state("u", false);
    int v = reach.add_state("v", true);
    reach.set_initial(u);
    reach.add_transition(u, {"a"}, v);
    reach.add_transition(v, {"a"}, v);
    CHECK(state_type(reach, u) == LetterType::RobustNonFinal);
}

TEST_CASE("pipeline reproduces the product fixed point window") {
    auto pipe = running_pipeline();
    CHECK(fixed_point_window(pipe.mu_p, "(p,g,g)", std::vector<int>{8, 11}) ==
          fixtures::expected_product_window_8x11());
    CHECK(is_prolongable(pipe.mu_p, "(p,g,g)"));
    CHECK(check_shape_symmetric(pipe.mu_p, "(p,g,g)").ok);
}

TEST_CASE("pipeline classification matches the component type table") {
    auto pipe = running_pipeline();
    const Dfa& lang = pipe.language;
    for (int q = 0; q < pipe.prod.dfao.m.n_states(); ++q) {
        Symbol name = pipe.prod.dfao.m.state_name(q);
        LetterType tk = state_type(lang, pipe.prod.lang_states[q][0]);
        LetterType tl = state_type(lang, pipe.prod.lang_states[q][1]);
        CHECK(pipe.types.at(name) == type_table_2d(tk, tl));
    }
    CHECK(pipe.types.at("(p,g,g)") == LetterType::RobustFinal);
    // any letter with the sink in a language component is dead
    int sink = lang.state("l");
    for (int q = 0; q < pipe.prod.dfao.m.n_states(); ++q)
        if (pipe.prod.lang_states[q][0] == sink || pipe.prod.lang_states[q][1] == sink)
            CHECK(pipe.types.at(pipe.prod.dfao.m.state_name(q)) == LetterType::Dead);
}

TEST_CASE("accepting-digit cuts and block counts") {
    auto pipe = running_pipeline();
    const Dfa& lang = pipe.language;
    auto cuts_g = accepting_digit_cuts(lang, lang.state("g"), pipe.digit_system);
    auto cuts_h = accepting_digit_cuts(lang, lang.state("h"), pipe.digit_system);
    auto cuts_k = accepting_digit_cuts(lang, lang.state("k"), pipe.digit_system);
    CHECK(cuts_g == std::vector<int>{0, 1, 2, 3});
    CHECK(cuts_h == std::vector<int>{0, 2, 3});
    CHECK(cuts_k == std::vector<int>{0, 3});
    CHECK(accepting_digit_cuts(lang, lang.state("l"), pipe.digit_system).empty());
}

TEST_CASE("block decomposition of the running example") {
    auto pipe = running_pipeline();
    const auto& dpgg = pipe.decomposition("(p,g,g)");
    CHECK(dpgg.h == std::vector<int>{3, 3});
    for (const auto& w : dpgg.w_blocks) CHECK(w.shape() == Shape{1, 1});

    const auto& dqhg = pipe.decomposition("(q,h,g)");
    CHECK(dqhg.h == std::vector<int>{2, 3});
    std::vector<int> off{0, 0};
    CHECK(dqhg.w(off) == pic2({"e (p,h,g)"}));
    CHECK(dqhg.v(off) == pic2({"(p,h,g)"}));
    CHECK(dqhg.accepting(off) == "(p,h,g)");

    // the dead-erased image of (q,h,g) collapses to the expected 2x3 block
    Picture dead_erased = map_letters(pipe.mu_p.image("(q,h,g)"), [&](const Symbol& s) {
        return pipe.types.at(s) == LetterType::Dead ? Symbol("e") : s;
    });
    CHECK(erase(dead_erased, "e") == pic2({
                                         "(p,h,g) (q,k,g)",
                                         "(s,h,h) (q,k,h)",
                                         "(q,h,k) (s,k,k)",
                                     }));

    // moribund-erased blocks of robust letters are always fully erasable
    for (const auto& [letter, type] : pipe.types) {
        if (!is_robust(type)) continue;
        Picture lm = map_letters(pipe.mu_p.image(letter), [&](const Symbol& s) {
            auto t = pipe.types.at(s);
            return t == LetterType::Dead || t == LetterType::Moribund ? Symbol("e") : s;
        });
        CHECK(is_erasable(lm, "e"));
    }

    // a letter whose components never accept has no decomposition
    CHECK_THROWS_WITH_AS(
        block_decomposition(
            pipe.phi, "(p,l,l)", pipe.lang_components("(p,l,l)"), pipe.language,
            pipe.digit_system, pipe.types,
            [&](const Symbol& s) { return pipe.accepting_letter(s); }, "e"),
        doctest::Contains("no accepting digit"), Error);
}

TEST_CASE("rebuilt morphism: images and coding") {
    auto pipe = running_pipeline();
    const auto& xi = pipe.xi;

    // image of the seed block letter: the full grid over the seed's blocks
    Picture alpha_img = xi.mu.image(xi.alpha);
    CHECK(alpha_img.shape() == Shape{3, 3});
    for_each_coord(alpha_img.shape(), [&](std::span<const int> n) {
        CHECK(alpha_img.at(n) == xi_letter_name("(p,g,g)", n));
    });

    // image of the block letter at offset (1,0): a 2x3 grid over (q,h,g)
    Symbol a10 = xi_letter_name("(p,g,g)", std::vector<int>{1, 0});
    Picture img10 = xi.mu.image(a10);
    CHECK(img10.shape() == Shape{2, 3});
    for_each_coord(img10.shape(), [&](std::span<const int> n) {
        CHECK(img10.at(n) == xi_letter_name("(q,h,g)", n));
    });

    // coding the seed image back yields the product image of the seed
    Picture coded = map_letters(alpha_img, pipe.xi.nu_prime);
    CHECK(coded == pipe.mu_p.image("(p,g,g)"));

    CHECK(is_prolongable(xi.mu, xi.alpha));
    CHECK(check_shape_symmetric(xi.mu, xi.alpha).ok);

    // coded corner of the rebuilt fixed point
    Picture corner =
        map_letters(fixed_point_window(xi.mu, xi.alpha, std::vector<int>{5, 3}), pipe.coding);
    CHECK(corner == pic2({"p q q p q", "p p s s q", "q p s q s"}));
}

TEST_CASE("block identity: coded iterates follow the product morphism") {
    auto pipe = running_pipeline();
    auto rho = [&](const Picture& x) {
        return erase(map_letters(x,
                                 [&](const Symbol& s) {
                                     return pipe.accepting_letter(s) ? s : Symbol("e");
                                 }),
                     "e");
    };
    // collect the robust letters reached by the closure
    std::vector<Symbol> robust;
    for (const auto& [letter, dec] : pipe.decompositions) robust.push_back(letter);
    REQUIRE(!robust.empty());
    for (const auto& p : robust) {
        const auto& dec = pipe.decompositions.at(p);
        Shape grid(dec.h.begin(), dec.h.end());
        Picture block_grid = Picture::filled(grid, "");
        for_each_coord(grid, [&](std::span<const int> n) {
            block_grid.set(n, xi_letter_name(p, n));
        });
        Picture lhs = block_grid;
        Picture mu_pow = pipe.mu_p.image(p);
        for (int n = 0; n <= 3; ++n) {
            CHECK(map_letters(lhs, pipe.xi.nu_prime) == rho(mu_pow));
            if (n == 3) break;
            lhs = apply(pipe.xi.mu, lhs);
            mu_pow = apply(pipe.mu_p, mu_pow);
        }
    }
}

TEST_CASE("image shapes are independent of the first product component") {
    auto pipe = running_pipeline();
    std::map<std::pair<std::vector<int>, std::vector<int>>, Shape> seen;
    for (const auto& xl : pipe.xi.letters) {
        auto key = std::make_pair(pipe.lang_components(xl.product_letter), xl.offsets);
        Shape shape = pipe.xi.mu.image(xl.name).shape();
        auto [it, inserted] = seen.emplace(key, shape);
        if (!inserted) CHECK(it->second == shape);
    }
}

TEST_CASE("rebuilt fixed point is shape-symmetric, square powers and transposes") {
    auto pipe = running_pipeline();
    const auto& xi = pipe.xi;
    Picture z = Picture::single(2, xi.alpha);
    std::vector<int> sizes;
    for (int d = 1; d <= 4; ++d) {
        z = apply(xi.mu, z);
        CHECK(z.extent(0) == z.extent(1));
        sizes.push_back(z.extent(0));
    }
    int t3 = sizes[2];
    Picture w = fixed_point_window(xi.mu, xi.alpha, std::vector<int>{t3, t3});
    for (int m = 0; m < t3; ++m)
        for (int n = 0; n < t3; ++n) {
            std::vector<int> mn{m, n}, nm{n, m};
            CHECK(xi.mu.image(w.at(mn)).extent(0) == xi.mu.image(w.at(nm)).extent(1));
            CHECK(xi.mu.image(w.at(mn)).extent(1) == xi.mu.image(w.at(nm)).extent(0));
        }
}

TEST_CASE("erasing the non-accepting letters recovers the automatic word") {
    auto pipe = running_pipeline();
    // the product automaton run as a DFAO with state names as outputs
    Dfao ident;
    ident.m = pipe.prod.dfao.m;
    ident.outputs = ident.m.state_names();
    auto system = fixtures::no_bb_system();
    auto rho = [&](const Picture& x) {
        return erase(map_letters(x,
                                 [&](const Symbol& s) {
                                     return pipe.accepting_letter(s) ? s : Symbol("e");
                                 }),
                     "e");
    };
    Picture power = pipe.mu_p.image("(p,g,g)");
    for (int m = 1; m <= 3; ++m) {
        Picture erased = rho(power);
        CHECK_FALSE(erased.is_empty());
        Picture expected = automatic_window(ident, system, erased.shape(), "#");
        CHECK(erased == expected);
        if (m < 3) power = apply(pipe.mu_p, power);
    }
}

TEST_CASE("automatic_to_morphic round trips on windows") {
    auto A = fixtures::sample_automatic_presentation();
    auto M = automatic_to_morphic(A);
    CHECK(cross_validate(M, A, std::vector<int>{24, 24}).ok());
    CHECK(check_shape_symmetric(M.mu, M.seed).ok);

    auto P = parity_presentation();
    auto PM = automatic_to_morphic(P);
    CHECK(cross_validate(PM, P, std::vector<int>{500}).ok());

    for (int d = 1; d <= 2; ++d) {
        auto E = even_length_presentation(d);
        Dfa padded = pad_star_language(E.system.language(), "#");
        auto pipe = run_part2(E.dfao, padded, OrderedAlphabet({"#", "a"}), d);
        CHECK(pipe.power == 2);
        auto EM = automatic_to_morphic(E);
        std::vector<int> shape(d, d == 1 ? 64 : 24);
        CHECK(cross_validate(EM, E, shape).ok());
    }
}

TEST_CASE("morphic_to_automatic matches the directive construction") {
    auto M = running_presentation();
    auto A = morphic_to_automatic(M, "#");
    CHECK(A.dims == 2);
    CHECK(A.pad == "#");

    // numeration system over the directive language
    std::vector<std::string> first{"@eps", "1", "10", "100", "101", "1000", "1001", "1010"};
    for (size_t n = 0; n < first.size(); ++n)
        CHECK(word_str(A.system.rep(static_cast<long>(n))) == first[n]);

    // DFAO transitions index the image boxes of the morphism
    for (const auto& letter : reachable_letters(M.mu, M.seed)) {
        const Picture& img = M.mu.image(letter);
        int from = A.dfao.m.state(letter);
        for_each_coord(img.shape(), [&](std::span<const int> n) {
            Label l{std::to_string(n[0]), std::to_string(n[1])};
            int to = A.dfao.m.next(from, l);
            REQUIRE(to >= 0);
            CHECK(A.dfao.m.state_name(to) == img.at(n));
        });
    }

    // the window of the automatic presentation equals the coded fixed point
    CHECK(cross_validate(M, A, std::vector<int>{20, 20}).ok());

    // reading the padded pair of representations of (7,4) visits a,b,c,b,c
    std::vector<Label> trace{{"1", "0"}, {"0", "1"}, {"1", "0"}, {"0", "1"}};
    int q = A.dfao.m.initial();
    std::vector<Symbol> outputs{A.dfao.output_of(q)};
    for (const auto& l : trace) {
        q = A.dfao.m.next(q, l);
        REQUIRE(q >= 0);
        outputs.push_back(A.dfao.output_of(q));
    }
    CHECK(outputs == std::vector<Symbol>{"a", "b", "c", "b", "c"});

    // all-pad loops are present, so the result feeds back into a2m
    validate_automatic(A);
    auto M2 = automatic_to_morphic(A);
    CHECK(cross_validate(M2, A, std::vector<int>{16, 16}).ok());
}

TEST_CASE("morphic_to_automatic on one-dimensional morphisms") {
    auto fib = make_uni_morphism({{"a", word_of("ab")}, {"b", word_of("a")}});
    MorphicPresentation M{fib, "a", {{"a", "0"}, {"b", "1"}}};
    auto A = morphic_to_automatic(M, "#");
    CHECK(cross_validate(M, A, std::vector<int>{200}).ok());
}

TEST_CASE("conversion preconditions are reported") {
    // not shape-symmetric
    std::map<Symbol, Picture> imgs;
    imgs.emplace("a", pic2({"a b"}));
    imgs.emplace("b", pic2({"b"}));
    MorphicPresentation flat{MultiMorphism(2, std::move(imgs)), "a", {{"a", "a"}, {"b", "b"}}};
    CHECK_THROWS_WITH_AS(morphic_to_automatic(flat, "#"),
                         doctest::Contains("not shape-symmetric"), Error);

    // missing coding entry
    MorphicPresentation partial{fixtures::running_morphism(), "a", {{"a", "a"}}};
    CHECK_THROWS_WITH_AS(morphic_to_automatic(partial, "#"), doctest::Contains("coding"),
                         Error);

    // the empty word must be in the language for the reverse direction
    Dfa lang;
    int s0 = lang.add_state("s0", false);
    int s1 = lang.add_state("s1", true);
    lang.set_initial(s0);
    lang.add_transition(s0, {"a"}, s1);
    lang.add_transition(s1, {"a"}, s1);
    NumerationSystem no_eps(OrderedAlphabet({"a"}), lang);
    auto P = parity_presentation();
    AutomaticPresentation bad{no_eps, P.dfao, "#", 1};
    CHECK_THROWS_WITH_AS(automatic_to_morphic(bad), doctest::Contains("empty word"), Error);

    // missing all-pad loop
    Dfao unlooped = fixtures::four_state_dfao();
    AutomaticPresentation bad2{fixtures::no_bb_system(), unlooped, "#", 2};
    CHECK_THROWS_WITH_AS(automatic_to_morphic(bad2), doctest::Contains("all-pad"), Error);
}

TEST_CASE("cross_validate reports the corrupted cells") {
    auto A = fixtures::sample_automatic_presentation();
    auto M = automatic_to_morphic(A);
    CHECK(cross_validate(M, A, std::vector<int>{1, 1}).ok());

    AutomaticPresentation corrupted = A;
    corrupted.dfao.outputs[corrupted.dfao.m.state("q")] = "r";
    auto report = cross_validate(M, corrupted, std::vector<int>{8, 8});
    CHECK_FALSE(report.ok());
    const auto& [coord, mv, av] = report.mismatches.front();
    CHECK(coord == std::vector<int>{1, 0}); // the first q cell in index order
    CHECK(mv == "q");
    CHECK(av == "r");
    CHECK(report.summary().find("(1,0)") != std::string::npos);

    auto P = parity_presentation();
    CHECK_THROWS_AS(cross_validate(M, P, std::vector<int>{4}), Error);
}
