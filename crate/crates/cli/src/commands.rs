//! Command dispatch: method selection, cross verification, and output in
//! canonical text or JSON form.

use num_bigint::BigInt;

use zetacob::arrangement::{family, Arrangement};
use zetacob::bivar::BivarPoly;
use zetacob::cyclotomic::{l_of, RingSpec};
use zetacob::egf::{egf_check, EgfParams, Identity, LhsSource};
use zetacob::error::Error;
use zetacob::finite_field::{
    check_correct_reduction, interpolate_values, stress_report, valid_specs,
    Backend,
};
use zetacob::poly::IntPoly;
use zetacob::symmetric::{
    coboundary_closed_form, decompose, expand_equations, RepEquation, Symmetry,
};

use crate::grammar::{parse, render_arrangement, ParsedFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_THEOREM: i32 = 4;

const USAGE: &str = "usage: zetacob <command> [flags]

commands:
  family <A|B|D|I> <n>          write the arrangement file to stdout
  family G <m> <p> <n>
  tutte                         Tutte polynomial T(x, y)
  coboundary                    coboundary polynomial in (q, t)
  zeta-coboundary               coboundary with q-exponents scaled by l_m
  characteristic                characteristic polynomial in q
  poincare                      Poincare polynomial of the complement
  regions                       region count of a real arrangement (m <= 2)
  egf --identity <A|B|D|In|Gmpn|Gmmn> --q <Q> --order <N> [--m M --p P]
                                check a generating-function identity
  verify [--all-methods]        cross-check all methods, nonzero exit on diff

flags:
  --file <path>                 read the arrangement from a file, not stdin
  --json                        machine-readable output
  --method definition|finite-field|symmetric   (coboundary family commands)
  --primes 5,7,11               evaluation primes for the finite-field method
  --backend prime-field|paper   finite coefficient ring flavor
";

/// Failure carrying its exit code.
struct Fail {
    code: i32,
    message: String,
}

impl Fail {
    fn usage(message: impl Into<String>) -> Self {
        Fail {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn from_core(e: Error) -> Self {
        let code = match e {
            Error::IdentityViolation { .. } | Error::FreenessViolation { .. } => EXIT_THEOREM,
            _ => EXIT_USAGE,
        };
        Fail {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    Definition,
    FiniteField,
    SymmetricForm,
}

struct Flags {
    json: bool,
    file: Option<String>,
    method: Method,
    primes: Vec<u64>,
    backend: Backend,
    all_methods: bool,
    identity: Option<String>,
    q: Option<u64>,
    order: Option<usize>,
    m: Option<u32>,
    p: Option<u32>,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            json: false,
            file: None,
            method: Method::Definition,
            primes: Vec::new(),
            backend: Backend::PrimeField,
            all_methods: false,
            identity: None,
            q: None,
            order: None,
            m: None,
            p: None,
        }
    }
}

fn parse_flags(args: &[String]) -> Result<(Vec<String>, Flags), Fail> {
    let mut flags = Flags::default();
    let mut positional = Vec::new();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut value = |name: &str| -> Result<String, Fail> {
            it.next()
                .cloned()
                .ok_or_else(|| Fail::usage(format!("{} needs a value", name)))
        };
        match arg.as_str() {
            "--json" => flags.json = true,
            "--all-methods" => flags.all_methods = true,
            "--file" => flags.file = Some(value("--file")?),
            "--method" => {
                flags.method = match value("--method")?.as_str() {
                    "definition" => Method::Definition,
                    "finite-field" => Method::FiniteField,
                    "symmetric" => Method::SymmetricForm,
                    other => return Err(Fail::usage(format!("unknown method '{}'", other))),
                }
            }
            "--backend" => {
                flags.backend = match value("--backend")?.as_str() {
                    "prime-field" => Backend::PrimeField,
                    "paper" => Backend::Spanning,
                    other => return Err(Fail::usage(format!("unknown backend '{}'", other))),
                }
            }
            "--primes" => {
                for part in value("--primes")?.split(',') {
                    let q: u64 = part
                        .trim()
                        .parse()
                        .map_err(|_| Fail::usage(format!("bad prime '{}'", part)))?;
                    flags.primes.push(q);
                }
            }
            "--identity" => flags.identity = Some(value("--identity")?),
            "--q" => {
                flags.q = Some(
                    value("--q")?
                        .parse()
                        .map_err(|_| Fail::usage("bad --q value"))?,
                )
            }
            "--order" => {
                flags.order = Some(
                    value("--order")?
                        .parse()
                        .map_err(|_| Fail::usage("bad --order value"))?,
                )
            }
            "--m" => {
                flags.m = Some(
                    value("--m")?
                        .parse()
                        .map_err(|_| Fail::usage("bad --m value"))?,
                )
            }
            "--p" => {
                flags.p = Some(
                    value("--p")?
                        .parse()
                        .map_err(|_| Fail::usage("bad --p value"))?,
                )
            }
            other if other.starts_with("--") => {
                return Err(Fail::usage(format!("unknown flag '{}'", other)));
            }
            other => positional.push(other.to_string()),
        }
    }
    Ok((positional, flags))
}

fn json_string(v: &BigInt) -> String {
    format!("\"{}\"", v)
}

fn bivar_json(p: &BivarPoly) -> String {
    let (v0, v1) = p.vars();
    let terms: Vec<String> = p
        .terms()
        .map(|(&(e0, e1), c)| format!("[{},{},{}]", e0, e1, json_string(c)))
        .collect();
    format!(
        "{{\"vars\":[\"{}\",\"{}\"],\"terms\":[{}]}}",
        v0,
        v1,
        terms.join(",")
    )
}

fn unipoly_json(p: &IntPoly, var: &str) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits_is_zero(c))
        .map(|(e, c)| format!("[{},{}]", e, json_string(c)))
        .collect();
    format!("{{\"vars\":[\"{}\"],\"terms\":[{}]}}", var, terms.join(","))
}

fn num_traits_is_zero(c: &BigInt) -> bool {
    use num_bigint::Sign;
    c.sign() == Sign::NoSign
}

struct Loaded {
    arrangement: Arrangement,
    representatives: Option<(Symmetry, Vec<RepEquation>)>,
}

fn load(flags: &Flags, stdin: &dyn Fn() -> std::io::Result<String>) -> Result<Loaded, Fail> {
    let text = match &flags.file {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Fail {
            code: EXIT_USAGE,
            message: format!("cannot read {}: {}", path, e),
        })?,
        None => stdin().map_err(|e| Fail {
            code: EXIT_USAGE,
            message: format!("cannot read stdin: {}", e),
        })?,
    };
    let parsed = parse(&text).map_err(|e| Fail {
        code: EXIT_PARSE,
        message: e.to_string(),
    })?;
    match parsed {
        ParsedFile::Hyperplanes(arrangement) => Ok(Loaded {
            arrangement,
            representatives: None,
        }),
        ParsedFile::Representatives {
            n,
            symmetry,
            equations,
            ..
        } => {
            let arrangement =
                expand_equations(&equations, n, symmetry).map_err(Fail::from_core)?;
            Ok(Loaded {
                arrangement,
                representatives: Some((symmetry, equations)),
            })
        }
    }
}

/// Gather evaluation rings: the user's primes first (validated), extended
/// with further valid primes until the interpolation has enough nodes.
fn resolve_specs(
    arr: &Arrangement,
    flags: &Flags,
    needed: usize,
    notes: &mut Vec<String>,
) -> Result<Vec<RingSpec>, Fail> {
    let mut specs: Vec<RingSpec> = Vec::new();
    for &q in &flags.primes {
        let spec = flags
            .backend
            .spec(arr.order(), q)
            .map_err(Fail::from_core)?;
        if !check_correct_reduction(arr, &spec).map_err(Fail::from_core)? {
            return Err(Fail::usage(format!(
                "the arrangement does not reduce correctly over {}",
                spec
            )));
        }
        if !specs.iter().any(|s| s.size() == spec.size()) {
            specs.push(spec);
        }
    }
    if specs.len() < needed {
        let have: Vec<u64> = specs.iter().map(|s| s.size()).collect();
        let extra = valid_specs(arr, flags.backend, needed + have.len() + 2)
            .map_err(Fail::from_core)?;
        for spec in extra {
            if specs.len() >= needed {
                break;
            }
            if !have.contains(&spec.size()) {
                notes.push(format!("note: adding evaluation ring {}", spec));
                specs.push(spec);
            }
        }
    }
    Ok(specs)
}

/// Decompositions worth trying, most structured first. A colored
/// decomposition can succeed on an arrangement whose representatives the
/// colored closed form then rejects (inhomogeneous pairs), so a plain
/// decomposition is kept as a fallback candidate.
fn symmetric_candidates(loaded: &Loaded) -> Vec<(Symmetry, Vec<RepEquation>)> {
    if let Some((sym, eqs)) = &loaded.representatives {
        return vec![(*sym, eqs.clone())];
    }
    let arr = &loaded.arrangement;
    let mut out = Vec::new();
    if arr.order() > 1 {
        if let Ok(eqs) = decompose(arr, Symmetry::Colored) {
            out.push((Symmetry::Colored, eqs));
        }
    }
    if let Ok(eqs) = decompose(arr, Symmetry::Plain) {
        out.push((Symmetry::Plain, eqs));
    }
    out
}

fn coboundary_by(
    method: Method,
    loaded: &Loaded,
    flags: &Flags,
    notes: &mut Vec<String>,
) -> Result<BivarPoly, Fail> {
    let arr = &loaded.arrangement;
    match method {
        Method::Definition => Ok(arr.coboundary()),
        Method::FiniteField => {
            let rank = arr.rank();
            let specs = resolve_specs(arr, flags, rank + 1, notes)?;
            zetacob::finite_field::interpolate_coboundary(arr, &specs).map_err(Fail::from_core)
        }
        Method::SymmetricForm => {
            let candidates = symmetric_candidates(loaded);
            if candidates.is_empty() {
                return Err(Fail::usage(
                    "symmetric method precondition unmet: the arrangement is not \
                     an orbit of representative equations",
                ));
            }
            let rank = arr.rank();
            let specs = resolve_specs(arr, flags, rank + 1, notes)?;
            let mut last_err = None;
            for (symmetry, equations) in candidates {
                let mut nodes = Vec::new();
                let mut values = Vec::new();
                let mut failed = None;
                for spec in &specs {
                    let outcome = coboundary_closed_form(
                        &equations,
                        arr.dim(),
                        spec,
                        symmetry,
                        rank,
                    )
                    .and_then(|value| {
                        // rings with zero divisors can break the counting
                        // hypotheses without tripping any earlier guard, so
                        // cross-check against the direct point count there
                        if matches!(flags.backend, Backend::Spanning) {
                            let direct =
                                zetacob::finite_field::coboundary_at_prime(arr, spec)?;
                            if direct != value {
                                return Err(zetacob::Error::IdentityViolation {
                                    ring: spec.to_string(),
                                    detail: format!(
                                        "closed form gave {}, point count gave {}",
                                        value.display("t"),
                                        direct.display("t")
                                    ),
                                });
                            }
                        }
                        Ok(value)
                    });
                    match outcome {
                        Ok(value) => {
                            nodes.push(BigInt::from(spec.size()));
                            values.push(value);
                        }
                        Err(e) => {
                            failed = Some(e);
                            break;
                        }
                    }
                }
                match failed {
                    None => {
                        return interpolate_values(&nodes, &values, rank)
                            .map_err(Fail::from_core)
                    }
                    Some(e) => last_err = Some(e),
                }
            }
            Err(Fail::from_core(last_err.expect("at least one candidate ran")))
        }
    }
}

fn cmd_family(positional: &[String]) -> Result<String, Fail> {
    if positional.is_empty() {
        return Err(Fail::usage("family needs a name"));
    }
    let name = positional[0].as_str();
    let params: Vec<u32> = positional[1..]
        .iter()
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| Fail::usage(format!("bad family parameter '{}'", s)))
        })
        .collect::<Result<_, _>>()?;
    let arr = family(name, &params).map_err(Fail::from_core)?;
    Ok(render_arrangement(&arr))
}

fn first_diff(a: &BivarPoly, b: &BivarPoly) -> String {
    for (&(e0, e1), c) in a.terms() {
        let other = b.coeff(e0, e1);
        if &other != c {
            return format!(
                "coefficient of q^{} t^{}: {} vs {}",
                e0, e1, c, other
            );
        }
    }
    for (&(e0, e1), c) in b.terms() {
        let missing = a.coeff(e0, e1);
        if &missing != c {
            return format!(
                "coefficient of q^{} t^{}: {} vs {}",
                e0, e1, missing, c
            );
        }
    }
    "no difference".to_string()
}

fn cmd_verify(
    loaded: &Loaded,
    flags: &Flags,
    out: &mut String,
    err: &mut String,
) -> Result<i32, Fail> {
    let arr = &loaded.arrangement;
    let mut notes = Vec::new();
    let mut results: Vec<(&str, BivarPoly)> = Vec::new();
    results.push((
        "definition",
        coboundary_by(Method::Definition, loaded, flags, &mut notes)?,
    ));
    results.push((
        "finite-field",
        coboundary_by(Method::FiniteField, loaded, flags, &mut notes)?,
    ));
    if flags.all_methods {
        results.push((
            "symmetric",
            coboundary_by(Method::SymmetricForm, loaded, flags, &mut notes)?,
        ));
    }
    let conversion_ok = arr.tutte_coboundary_check().map_err(Fail::from_core)?;
    for note in notes {
        err.push_str(&note);
        err.push('\n');
    }

    let (base_name, base) = &results[0];
    let mut mismatched = false;
    for (name, poly) in &results[1..] {
        if poly == base {
            out.push_str(&format!("{}: agrees with {}\n", name, base_name));
        } else {
            mismatched = true;
            out.push_str(&format!(
                "{}: MISMATCH against {}\n  {}\n  {} gave: {}\n  {} gave: {}\n",
                name,
                base_name,
                first_diff(base, poly),
                base_name,
                base.render(),
                name,
                poly.render()
            ));
        }
    }
    out.push_str(&format!(
        "tutte conversion identity: {}\n",
        if conversion_ok { "ok" } else { "MISMATCH" }
    ));
    if mismatched || !conversion_ok {
        return Ok(EXIT_MISMATCH);
    }
    out.push_str(&format!("coboundary: {}\n", base.render()));
    Ok(EXIT_OK)
}

fn cmd_egf(flags: &Flags, out: &mut String) -> Result<i32, Fail> {
    let name = flags
        .identity
        .as_deref()
        .ok_or_else(|| Fail::usage("egf needs --identity"))?;
    let identity = Identity::parse(name)
        .ok_or_else(|| Fail::usage(format!("unknown identity '{}'", name)))?;
    let q = flags.q.ok_or_else(|| Fail::usage("egf needs --q"))?;
    let order = flags.order.ok_or_else(|| Fail::usage("egf needs --order"))?;
    let params = match identity {
        Identity::Gmpn | Identity::Gmmn => {
            let m = flags.m.ok_or_else(|| Fail::usage("egf needs --m"))?;
            let p = match identity {
                Identity::Gmpn => flags.p.unwrap_or(1),
                _ => m,
            };
            let ring_size = match flags.backend {
                Backend::PrimeField => q,
                Backend::Spanning => {
                    let l = l_of(m).map_err(Fail::from_core)?;
                    q.checked_pow(l as u32)
                        .ok_or_else(|| Fail::usage("ring size overflows"))?
                }
            };
            EgfParams { q, m, p, ring_size }
        }
        _ => EgfParams::classical(q),
    };
    let report =
        egf_check(identity, &params, order, &LhsSource::Definition).map_err(Fail::from_core)?;
    for entry in &report.entries {
        if entry.equal() {
            out.push_str(&format!("n = {}: ok ({})\n", entry.n, entry.lhs.display("t")));
        } else {
            out.push_str(&format!(
                "n = {}: MISMATCH (lhs {}, rhs {})\n",
                entry.n,
                entry.lhs.display("t"),
                entry.rhs.display("t")
            ));
        }
    }
    Ok(if report.all_equal() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn cmd_stress(loaded: &Loaded, flags: &Flags, out: &mut String) -> Result<i32, Fail> {
    let arr = &loaded.arrangement;
    let specs: Vec<RingSpec> = flags
        .primes
        .iter()
        .map(|&q| RingSpec::spanning(arr.order(), q))
        .collect::<Result<_, _>>()
        .map_err(Fail::from_core)?;
    if specs.is_empty() {
        return Err(Fail::usage("stress needs --primes"));
    }
    let report = stress_report(arr, &specs).map_err(Fail::from_core)?;
    let mut all_exact = true;
    for case in &report {
        all_exact &= case.is_exact();
        out.push_str(&case.describe());
        out.push('\n');
    }
    Ok(if all_exact { EXIT_OK } else { EXIT_THEOREM })
}

/// Entry point shared by the binary and the tests: returns the exit code and
/// fills the output buffers.
pub fn run(
    args: &[String],
    stdin: &dyn Fn() -> std::io::Result<String>,
    out: &mut String,
    err: &mut String,
) -> i32 {
    match run_inner(args, stdin, out, err) {
        Ok(code) => code,
        Err(fail) => {
            err.push_str(&fail.message);
            err.push('\n');
            fail.code
        }
    }
}

fn run_inner(
    args: &[String],
    stdin: &dyn Fn() -> std::io::Result<String>,
    out: &mut String,
    err: &mut String,
) -> Result<i32, Fail> {
    if args.iter().any(|a| a == "--help" || a == "help") {
        out.push_str(USAGE);
        return Ok(EXIT_OK);
    }
    let (positional, flags) = parse_flags(args)?;
    let Some(command) = positional.first() else {
        return Err(Fail::usage(USAGE));
    };
    let rest = &positional[1..];

    match command.as_str() {
        "family" => {
            out.push_str(&cmd_family(rest)?);
            Ok(EXIT_OK)
        }
        "tutte" => {
            let loaded = load(&flags, stdin)?;
            let t = loaded.arrangement.tutte();
            out.push_str(&emit_bivar(&t, flags.json));
            Ok(EXIT_OK)
        }
        "coboundary" | "zeta-coboundary" => {
            let loaded = load(&flags, stdin)?;
            let mut notes = Vec::new();
            let chi = coboundary_by(flags.method, &loaded, &flags, &mut notes)?;
            let result = if command == "zeta-coboundary" {
                let l = l_of(loaded.arrangement.order()).map_err(Fail::from_core)? as u32;
                chi.stretch_first(l)
            } else {
                chi
            };
            for note in notes {
                err.push_str(&note);
                err.push('\n');
            }
            out.push_str(&emit_bivar(&result, flags.json));
            Ok(EXIT_OK)
        }
        "characteristic" => {
            let loaded = load(&flags, stdin)?;
            let p = loaded.arrangement.characteristic();
            out.push_str(&emit_unipoly(&p, "q", flags.json));
            Ok(EXIT_OK)
        }
        "poincare" => {
            let loaded = load(&flags, stdin)?;
            let p = loaded.arrangement.poincare();
            out.push_str(&emit_unipoly(&p, "q", flags.json));
            Ok(EXIT_OK)
        }
        "regions" => {
            let loaded = load(&flags, stdin)?;
            let r = loaded.arrangement.region_count().map_err(Fail::from_core)?;
            if flags.json {
                out.push_str(&format!("{{\"regions\":{}}}\n", json_string(&r)));
            } else {
                out.push_str(&format!("{}\n", r));
            }
            Ok(EXIT_OK)
        }
        "egf" => cmd_egf(&flags, out),
        "verify" => {
            let loaded = load(&flags, stdin)?;
            cmd_verify(&loaded, &flags, out, err)
        }
        "stress" => {
            let loaded = load(&flags, stdin)?;
            cmd_stress(&loaded, &flags, out)
        }
        other => Err(Fail::usage(format!("unknown command '{}'\n{}", other, USAGE))),
    }
}

fn emit_bivar(p: &BivarPoly, json: bool) -> String {
    if json {
        format!("{}\n", bivar_json(p))
    } else {
        format!("{}\n", p.render())
    }
}

fn emit_unipoly(p: &IntPoly, var: &str, json: bool) -> String {
    if json {
        format!("{}\n", unipoly_json(p, var))
    } else {
        format!("{}\n", p.display(var))
    }
}
