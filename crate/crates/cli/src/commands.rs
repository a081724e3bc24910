//! One function per subcommand, each filling a [`ResultDocument`].

use std::path::Path;

use kerpair::behavior::{admissible, AdmissibleInputQuery, Boundary, SystemPair};
use kerpair::crt::{self, base_change_check};
use kerpair::kernel_pair::{
    check_cardinality, check_degenerate, check_identities, check_pair, compare_methods, kernel_pair_by,
    kernel_pair_projection, Automorphism, ExactSequenceWitness, Method,
};
use kerpair::{linear, poly_matrix, Element, KernelPairResult, Matrix, RingKind, RingSpec, Submodule};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::document::{Basis, NamedMatrix, PrimeEntry, ResultDocument, Status};
use crate::file::{parse_vector, parse_vectors, MatrixFile};
use crate::{BoundaryArg, Cli, CliError, Command, MethodArg};

type Result<T> = std::result::Result<T, CliError>;

pub fn dispatch(cli: &Cli, doc: &mut ResultDocument) -> Result<()> {
    match &cli.command {
        Command::Kernel { file, name } => kernel(&load(file)?, name, doc),
        Command::KernelPair { file, a, b } => kernel_pair(&load(file)?, a, b, cli.method, cli.verify, doc),
        Command::Idempotents { m } => idempotents(*m, doc),
        Command::Member { file, a, b, vector } => member(&load(file)?, a, b, &vector.join(" "), doc),
        Command::Simulate {
            file,
            a,
            b,
            x0,
            inputs,
            steps,
            boundary,
        } => simulate(&load(file)?, a, b, x0.as_deref(), inputs.as_deref(), *steps, *boundary, doc),
        Command::Verify {
            file,
            a,
            b,
            trials,
            section,
        } => verify(&load(file)?, a, b, *trials, cli.seed, section.as_deref(), doc),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path) -> Result<MatrixFile> {
    MatrixFile::parse(&read(path)?)
}

fn pair<'f>(file: &'f MatrixFile, a: &str, b: &str) -> Result<(&'f Matrix, &'f Matrix)> {
    let (a, b) = (file.get(a)?, file.get(b)?);
    check_pair(a, b)?;
    Ok((a, b))
}

/// Per-prime components of several submodules, when the ring decomposes.
fn per_prime(ring: &RingSpec, named: &[(&str, &Submodule)]) -> Vec<PrimeEntry> {
    let composite = matches!(ring.kind(), RingKind::ModRing | RingKind::PolyModRing);
    if !composite || !ring.is_decomposable() {
        return Vec::new();
    }
    let Ok(dec) = crt::idempotents(ring.modulus()) else {
        return Vec::new();
    };
    dec.primes()
        .iter()
        .zip(dec.idempotents())
        .enumerate()
        .map(|(i, (&prime, &e))| PrimeEntry {
            prime,
            idempotent: Some(e),
            bases: named
                .iter()
                .filter_map(|(name, s)| s.components().map(|c| Basis::of(name, &c[i])))
                .collect(),
        })
        .collect()
}

fn describe(s: &Submodule) -> &'static str {
    if s.is_zero() {
        "zero"
    } else if s.is_full() {
        "full"
    } else {
        "proper"
    }
}

fn kernel(file: &MatrixFile, name: &str, doc: &mut ResultDocument) -> Result<()> {
    doc.ring = Some(file.ring.to_string());
    let k = linear::kernel(file.get(name)?)?;
    doc.bases.push(Basis::of("kernel", &k));
    doc.per_prime = per_prime(&file.ring, &[("kernel", &k)]);
    Ok(())
}

fn kernel_pair(
    file: &MatrixFile,
    a: &str,
    b: &str,
    method: MethodArg,
    verify: bool,
    doc: &mut ResultDocument,
) -> Result<()> {
    doc.ring = Some(file.ring.to_string());
    let (a, b) = pair(file, a, b)?;
    let ring = a.ring();
    let with_witness = ring.kind() != RingKind::ModRing || ring.is_decomposable();
    let (res, wit): (KernelPairResult, Option<ExactSequenceWitness>) = match method {
        MethodArg::Auto if with_witness => {
            let (r, w) = kernel_pair_projection(a, b)?;
            (r, Some(w))
        }
        MethodArg::Projection => {
            let (r, w) = kernel_pair_projection(a, b)?;
            (r, Some(w))
        }
        MethodArg::Auto => (kerpair::kernel_pair(a, b)?, None),
        MethodArg::Preimage => (unavailable(Method::Preimage, ring, kernel_pair_by(Method::Preimage, a, b))?, None),
        MethodArg::Quotient => (unavailable(Method::Quotient, ring, kernel_pair_by(Method::Quotient, a, b))?, None),
        MethodArg::Oracle => (unavailable(Method::Oracle, ring, kernel_pair_by(Method::Oracle, a, b))?, None),
    };
    doc.messages.push(format!("method: {}", res.method.name()));
    doc.bases.push(Basis::of("ker_bar", &res.ker_bar));
    doc.bases.push(Basis::of("ker_f1", &res.ker_f1));
    doc.bases.push(Basis::of("ker_pair", &res.ker_pair));
    doc.per_prime = per_prime(
        ring,
        &[("ker_bar", &res.ker_bar), ("ker_f1", &res.ker_f1), ("ker_pair", &res.ker_pair)],
    );
    if let Some(comps) = res.ker_bar.components() {
        for (p, c) in ring.primes().iter().zip(comps) {
            doc.messages.push(format!("prime {p}: ker_bar {}", describe(c)));
        }
    }
    if b.is_zero() {
        doc.messages.push("ker(f₁|0) = M₂: B is zero, so every u is admissible".into());
    }
    if let Some(w) = wit {
        doc.witnesses.push(NamedMatrix::of("inclusion", &w.inclusion));
        doc.witnesses.push(NamedMatrix::of("section", &w.section));
        doc.check("splitting", w.verify(a, b, &res).map(|_| "section and inclusion split the sequence".into()).map_err(|e| e.to_string()));
    }
    if verify {
        let ran = compare_methods(a, b)?;
        let names: Vec<&str> = ran.iter().map(|m| m.name()).collect();
        doc.check("method agreement", Ok(names.join(", ")));
    }
    Ok(())
}

/// A method that does not apply to the ring is a usage error.
fn unavailable(method: Method, ring: &RingSpec, r: kerpair::Result<KernelPairResult>) -> Result<KernelPairResult> {
    r.map_err(|e| match e {
        kerpair::Error::NotAField(_) | kerpair::Error::NotFinite(_) => {
            CliError::Usage(format!("method {} is unavailable over {ring}", method.name()))
        }
        e => e.into(),
    })
}

fn idempotents(m: u64, doc: &mut ResultDocument) -> Result<()> {
    doc.ring = Some(format!("Z/{m}"));
    let dec = crt::idempotents(m)?;
    let e = dec.idempotents();
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % m as u128) as u64;
    doc.per_prime = dec
        .primes()
        .iter()
        .zip(e)
        .map(|(&prime, &idempotent)| PrimeEntry {
            prime,
            idempotent: Some(idempotent),
            bases: Vec::new(),
        })
        .collect();
    let squares = e.iter().all(|&x| mul(x, x) == x);
    doc.check("e_i^2 = e_i", if squares { Ok("every idempotent squares to itself".into()) } else { Err(format!("{e:?}")) });
    let orthogonal = (0..e.len()).all(|i| (0..e.len()).all(|j| i == j || mul(e[i], e[j]) == 0));
    doc.check("e_i e_j = 0", if orthogonal { Ok("distinct idempotents multiply to zero".into()) } else { Err(format!("{e:?}")) });
    let total = e.iter().fold(0u64, |acc, &x| (acc + x) % m);
    doc.check("sum e_i = 1", if total == 1 % m { Ok(format!("sum is {total}")) } else { Err(format!("sum is {total}")) });
    Ok(())
}

fn member(file: &MatrixFile, a: &str, b: &str, vector: &str, doc: &mut ResultDocument) -> Result<()> {
    doc.ring = Some(file.ring.to_string());
    let (a, b) = pair(file, a, b)?;
    let ring = a.ring();
    let u = parse_vector(ring, vector, 0).map_err(|e| CliError::Usage(format!("vector: {e}")))?;
    if u.len() != b.cols() {
        return Err(CliError::Usage(format!("vector has {} entries, B has {} columns", u.len(), b.cols())));
    }
    let x = if ring.is_poly() {
        poly_matrix::poly_member(a, b, &u)?
    } else {
        let rhs: Vec<Element> = b.apply(&u)?.iter().map(|e| ring.neg(e)).collect();
        linear::solve(a, &rhs)?
    };
    doc.witnesses.push(NamedMatrix::from_rows("u", u.len(), std::slice::from_ref(&u)));
    let Some(x) = x else {
        doc.set_status(Status::NotMember);
        doc.messages.push("u is not in ker(A | B)".into());
        return Ok(());
    };
    let residual: Vec<Element> = a.apply(&x)?.iter().zip(b.apply(&u)?).map(|(l, r)| ring.add(l, &r)).collect();
    doc.check(
        "witness",
        if residual.iter().all(|e| ring.is_zero(e)) { Ok("A x + B u = 0".into()) } else { Err("A x + B u != 0".into()) },
    );
    doc.witnesses.push(NamedMatrix::from_rows("x", x.len(), &[x]));
    if ring.kind() == RingKind::ModRing && ring.is_decomposable() {
        doc.messages.push("witness assembled from per-prime solutions".into());
    }
    doc.messages.push("u is in ker(A | B)".into());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    file: &MatrixFile,
    a: &str,
    b: &str,
    x0: Option<&Path>,
    inputs: Option<&Path>,
    steps: Option<usize>,
    boundary: BoundaryArg,
    doc: &mut ResultDocument,
) -> Result<()> {
    doc.ring = Some(file.ring.to_string());
    let ring = &file.ring;
    let sys = SystemPair::new(file.get(a)?.clone(), file.get(b)?.clone())?;
    let mut us: Vec<Vec<Element>> = match inputs {
        Some(p) => parse_vectors(ring, &read(p)?)?.into_iter().map(|(_, v)| v).collect(),
        None => Vec::new(),
    };
    let horizon = steps.unwrap_or(us.len());
    us.resize(horizon, vec![ring.zero(); sys.inputs()]);
    let start = match x0 {
        Some(p) => {
            let rows = parse_vectors(ring, &read(p)?)?;
            match rows.as_slice() {
                [(_, v)] => Some(v.clone()),
                _ => return Err(CliError::Usage(format!("{}: expected one initial state", p.display()))),
            }
        }
        None => None,
    };
    let boundary = match (boundary, start) {
        (BoundaryArg::Fixed, s) => Boundary::FixedInitial(s.unwrap_or_else(|| vec![ring.zero(); sys.states()])),
        (BoundaryArg::Free, None) => Boundary::FreeInitial,
        (BoundaryArg::Periodic, None) => Boundary::PeriodicT,
        (_, Some(_)) => return Err(CliError::Usage("--x0 applies only to the fixed boundary".into())),
    };
    let query = AdmissibleInputQuery { inputs: us, boundary };
    match admissible(&sys, &query)? {
        Some(t) => {
            t.verify(&sys)?;
            doc.witnesses.push(NamedMatrix::from_rows("states", sys.states(), &t.states));
            doc.witnesses.push(NamedMatrix::from_rows("inputs", sys.inputs(), &t.inputs));
            doc.messages.push(format!("horizon {}", t.horizon()));
        }
        None => {
            doc.set_status(Status::NotAdmissible);
            doc.messages.push("no trajectory satisfies the boundary condition".into());
        }
    }
    Ok(())
}

/// Runs `f`; violations become failed checks, other errors propagate.
fn record(doc: &mut ResultDocument, name: &str, f: impl FnOnce() -> kerpair::Result<String>) -> Result<()> {
    match f() {
        Ok(detail) => doc.check(name, Ok(detail)),
        Err(e) => {
            let e = CliError::from(e);
            if e.status() != Status::Violation {
                return Err(e);
            }
            doc.check(name, Err(e.to_string()));
        }
    }
    Ok(())
}

fn verify(
    file: &MatrixFile,
    a: &str,
    b: &str,
    trials: usize,
    seed: u64,
    section: Option<&str>,
    doc: &mut ResultDocument,
) -> Result<()> {
    doc.ring = Some(file.ring.to_string());
    let replacement = section.map(|n| file.get(n)).transpose()?;
    let (a, b) = pair(file, a, b)?;
    let ring = a.ring();

    record(doc, "method agreement", || {
        let ran = compare_methods(a, b)?;
        Ok(ran.iter().map(|m| m.name()).collect::<Vec<_>>().join(", "))
    })?;
    record(doc, "cardinality", || {
        let res = kerpair::kernel_pair(a, b)?;
        if ring.is_finite() {
            let (pair, f1, bar) = check_cardinality(&res)?;
            return Ok(format!("|ker [A | B]| = {pair} = {f1} * {bar}"));
        }
        let r = |s: &Submodule| s.rank().unwrap_or(0);
        let (pair, f1, bar) = (r(&res.ker_pair), r(&res.ker_f1), r(&res.ker_bar));
        if pair != f1 + bar {
            return Err(kerpair::Error::IdentityViolated {
                clause: "rank".into(),
                detail: format!("rank ker [A | B] = {pair}, rank ker A = {f1}, rank ker(A | B) = {bar}"),
            });
        }
        Ok(format!("rank ker [A | B] = {pair} = {f1} + {bar}"))
    })?;
    if ring.kind() == RingKind::ModRing && !ring.is_decomposable() {
        doc.messages.push(format!("splitting: no section over {ring}, the modulus has a repeated prime"));
    } else {
        record(doc, "splitting", || {
            let (res, mut wit) = kernel_pair_projection(a, b)?;
            if let Some(s) = replacement {
                wit.section = s.clone();
            }
            wit.verify(a, b, &res)?;
            Ok(format!("{} inclusion and {} section columns", wit.inclusion.cols(), wit.section.cols()))
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    record(doc, "automorphism identities", || {
        for _ in 0..trials {
            let psi1 = Automorphism::random(ring, a.cols(), &mut rng);
            let psi2 = Automorphism::random(ring, b.cols(), &mut rng);
            let psi = Automorphism::random(ring, a.rows(), &mut rng);
            check_identities(a, b, &psi1, &psi2, &psi)?;
        }
        Ok(format!("{trials} random triples, seed {seed}"))
    })?;
    record(doc, "degenerate identities", || {
        let seen = check_degenerate(a, b)?;
        Ok(seen.iter().map(|d| format!("{d:?}")).collect::<Vec<_>>().join(", "))
    })?;
    if matches!(ring.kind(), RingKind::ModRing | RingKind::PolyModRing) && ring.is_decomposable() {
        for (i, p) in ring.primes().iter().enumerate() {
            record(doc, &format!("base change at {p}"), || {
                let rep = base_change_check(a, b, i)?;
                Ok(format!("reduced kernel {} equals the direct one", describe(&rep.direct)))
            })?;
        }
    }
    Ok(())
}
