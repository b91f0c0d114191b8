//! End-to-end command tests driving the same entry point as the binary.

use zetacob_cli::{parse, run_captured, ParsedFile};

#[test]
fn family_pipe_tutte() {
    let (code, file, _) = run_captured(&["family", "A", "3"], "");
    assert_eq!(code, 0);
    let (code, out, _) = run_captured(&["tutte"], &file);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "x^2 + x + y");
}

#[test]
fn coboundary_methods_agree_for_i3() {
    let (_, file, _) = run_captured(&["family", "I", "3"], "");
    let (code, def, _) = run_captured(&["coboundary"], &file);
    assert_eq!(code, 0);
    let (code, ff, err) = run_captured(
        &["coboundary", "--method", "finite-field", "--primes", "5,7,11"],
        &file,
    );
    assert_eq!(code, 0, "stderr: {}", err);
    // the prime list is one short for rank 3 and gets extended, with the
    // note kept off the polynomial stream
    assert!(err.contains("note: adding evaluation ring"));
    assert_eq!(def.trim(), ff.trim());

    let (code, sym, _) = run_captured(&["coboundary", "--method", "symmetric"], &file);
    assert_eq!(code, 0);
    assert_eq!(def.trim(), sym.lines().last().unwrap().trim());
}

#[test]
fn verify_all_methods_on_colored_family() {
    let (_, file, _) = run_captured(&["family", "G", "3", "3", "2"], "");
    let (code, out, err) = run_captured(
        &["verify", "--all-methods", "--backend", "prime-field"],
        &file,
    );
    assert_eq!(code, 0, "stdout: {} stderr: {}", out, err);
    assert!(out.contains("symmetric: agrees"));
}

#[test]
fn zeta_coboundary_scales_exponents() {
    let (_, file, _) = run_captured(&["family", "G", "3", "3", "2"], "");
    let (code, out, _) = run_captured(&["zeta-coboundary"], &file);
    assert_eq!(code, 0);
    assert!(out.contains("q^6"), "l_3 = 3 scales the rank-2 leading term: {}", out);
}

#[test]
fn json_output_is_stable_and_sorted() {
    let (_, file, _) = run_captured(&["family", "A", "3"], "");
    let (code, a, _) = run_captured(&["coboundary", "--json"], &file);
    let (_, b, _) = run_captured(&["coboundary", "--json"], &file);
    assert_eq!(code, 0);
    assert_eq!(a, b, "byte-stable across runs");
    assert_eq!(
        a.trim(),
        r#"{"vars":["q","t"],"terms":[[0,0,"2"],[0,1,"-3"],[0,3,"1"],[1,0,"-3"],[1,1,"3"],[2,0,"1"]]}"#
    );

    let (code, ch, _) = run_captured(&["characteristic", "--json"], &file);
    assert_eq!(code, 0);
    assert_eq!(
        ch.trim(),
        r#"{"vars":["q"],"terms":[[1,"2"],[2,"-3"],[3,"1"]]}"#
    );
}

#[test]
fn exit_codes() {
    // usage
    let (code, _, _) = run_captured(&["bogus"], "");
    assert_eq!(code, 1);
    let (code, _, _) = run_captured(&["coboundary", "--method", "nope"], "");
    assert_eq!(code, 1);

    // parse
    let (code, _, err) = run_captured(&["tutte"], "m = 1\nn = 2\nz1 + = 0\n");
    assert_eq!(code, 2);
    assert!(err.contains("token 3"), "err: {}", err);

    // regions refuses complex coefficients
    let (_, file, _) = run_captured(&["family", "G", "3", "3", "2"], "");
    let (code, _, err) = run_captured(&["regions"], &file);
    assert_eq!(code, 1);
    assert!(err.contains("m <= 2"), "err: {}", err);

    // identity violation diagnostics exit with 4
    let (code, out, _) = run_captured(&["stress", "--primes", "5,7"], &file);
    assert_eq!(code, 4);
    assert!(out.contains("violation"), "out: {}", out);

    // the symmetric method over a zero-divisor ring cross-checks itself
    let (code, _, err) = run_captured(
        &["coboundary", "--method", "symmetric", "--backend", "paper"],
        &file,
    );
    assert_eq!(code, 4, "err: {}", err);
    assert!(err.contains("violat") || err.contains("orbit"), "err: {}", err);
}

#[test]
fn regions_of_real_families() {
    let (_, file, _) = run_captured(&["family", "A", "3"], "");
    let (code, out, _) = run_captured(&["regions"], &file);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "6");

    let (_, file, _) = run_captured(&["family", "B", "2"], "");
    let (_, out, _) = run_captured(&["regions", "--json"], &file);
    assert_eq!(out.trim(), r#"{"regions":"8"}"#);
}

#[test]
fn representative_file_drives_symmetric_method() {
    let file = "m = 1\nn = 3\nrep sh: z1 = 0\nrep sh: z1 = 1\nrep sh: z1 + z2 = 1\n";
    let (code, sym, err) = run_captured(&["coboundary", "--method", "symmetric"], file);
    assert_eq!(code, 0, "stderr: {}", err);
    let (_, ifile, _) = run_captured(&["family", "I", "3"], "");
    let (_, def, _) = run_captured(&["coboundary"], &ifile);
    assert_eq!(sym.lines().last(), def.lines().last());
}

#[test]
fn symmetric_method_falls_back_to_plain_decomposition() {
    // closed under colored permutations, but the colored representatives are
    // inhomogeneous pairs; the plain orbit structure still applies
    let file = "m = 2\nn = 2\nz1 + z2 = 1\nz1 - z2 = 1\nz1 + z2 = -1\nz1 - z2 = -1\n";
    let (code, sym, err) = run_captured(&["coboundary", "--method", "symmetric"], file);
    assert_eq!(code, 0, "stderr: {}", err);
    let (code, def, _) = run_captured(&["coboundary"], file);
    assert_eq!(code, 0);
    assert_eq!(sym.trim(), def.trim());
}

#[test]
fn egf_command_reports_per_order() {
    let (code, out, _) = run_captured(&["egf", "--identity", "A", "--q", "5", "--order", "3"], "");
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().all(|l| l.contains("ok")));

    let (code, _, err) = run_captured(&["egf", "--identity", "B", "--q", "4", "--order", "2"], "");
    assert_eq!(code, 1);
    assert!(err.contains("odd"), "err: {}", err);

    let (code, out, _) = run_captured(
        &[
            "egf", "--identity", "Gmmn", "--q", "7", "--order", "3", "--m", "3",
        ],
        "",
    );
    assert_eq!(code, 0, "out: {}", out);
}

#[test]
fn parse_render_round_trip_through_cli() {
    for familyargs in [
        vec!["family", "A", "3"],
        vec!["family", "B", "3"],
        vec!["family", "I", "2"],
        vec!["family", "G", "4", "2", "2"],
    ] {
        let (code, file, _) = run_captured(&familyargs, "");
        assert_eq!(code, 0);
        let ParsedFile::Hyperplanes(first) = parse(&file).unwrap() else {
            panic!("family emits hyperplane files");
        };
        let again = zetacob_cli::render_arrangement(&first);
        let ParsedFile::Hyperplanes(second) = parse(&again).unwrap() else {
            panic!("round trip stays a hyperplane file");
        };
        assert_eq!(first, second);
    }
}
