//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs as a plain binary (`harness = false`).

mod common;

use std::time::Instant;

use common::{dot, knapsack, q, r, random_general, random_nonneg, vertices};
use discrete_farkas::lp_build::degree_bound;
use discrete_farkas::{
    assemble, check, check_general, count_series, dims, enumerate, eval_check, extract_witness, from_witness,
    maximize, pruned_dims, reachable, s, solve_feasibility, verify, Assembly, Certificate, EqualitySystem, EvaluationPoint,
    Instance, LpOutcome, Rational, Verdict,
};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const NONNEG_INSTANCES: usize = 500;
const GENERAL_INSTANCES: usize = 300;
/// General instances whose lifted pruned LP exceeds this many rows are redrawn.
const GENERAL_MAX_ROWS: usize = 40000;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Feasible {
    inst: Instance,
    cert: Certificate,
    witness: Vec<u64>,
}

struct Corpus {
    nonneg: Vec<Instance>,
    feasible: Vec<Feasible>,
    lifted_feasible: Vec<Feasible>,
}

fn corpus() -> Corpus {
    let mut rng = StdRng::seed_from_u64(2024);
    Corpus {
        nonneg: (0..NONNEG_INSTANCES).map(|_| random_nonneg(&mut rng)).collect(),
        feasible: Vec::new(),
        lifted_feasible: Vec::new(),
    }
}

fn criterion_1(c: &mut Corpus) -> Outcome {
    let start = Instant::now();
    let (mut feasible, mut full_solved) = (0, 0);
    for inst in &c.nonneg {
        let d = check(inst, Assembly::Pruned).map_err(|e| e.to_string())?;
        let lp = d.verdict == Verdict::Feasible;
        let en = enumerate(inst, 1).map_err(|e| e.to_string())?.count > BigUint::zero();
        let re = reachable(inst).map_err(|e| e.to_string())?;
        ensure(lp == en && en == re, || format!("{inst:?}: lp {lp}, enumerate {en}, reachable {re}"))?;
        let full = check(inst, Assembly::Full).map_err(|e| e.to_string())?;
        ensure(full.verdict == d.verdict, || format!("{inst:?}: pruned and full disagree"))?;
        full_solved += 1;
        if lp {
            feasible += 1;
            c.feasible.push(Feasible {
                inst: inst.clone(),
                cert: d.certificate.expect("feasible decision has a certificate"),
                witness: d.witness.expect("feasible decision has a witness"),
            });
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    ensure(feasible > 0 && feasible < c.nonneg.len(), || "corpus lacks one of the verdicts".into())?;
    Ok(format!(
        "{} instances ({feasible} feasible), 3-way agreement 100%, pruned and full agree on all {full_solved}, {secs:.1}s",
        c.nonneg.len()
    ))
}

fn criterion_2(c: &Corpus) -> Outcome {
    let mut terms = 0;
    for f in &c.feasible {
        ensure(verify(&f.inst, &f.cert).is_valid(), || format!("{:?}: certificate invalid", f.inst))?;
        let bstar = degree_bound(&f.inst).map_err(|e| e.to_string())?;
        for qj in &f.cert.q {
            for (_, coeff) in qj.terms() {
                ensure(!coeff.is_negative(), || format!("{:?}: negative coefficient", f.inst))?;
                terms += 1;
            }
            ensure(qj.is_empty() || BigInt::from(qj.degree()) <= bstar, || {
                format!("{:?}: degree {} exceeds b* = {bstar}", f.inst, qj.degree())
            })?;
        }
    }
    Ok(format!("{} certificates Valid, {terms} terms all >= 0, deg Q_j <= b*", c.feasible.len()))
}

fn criterion_3(c: &Corpus) -> Outcome {
    let mut roundtrips = 0;
    for f in &c.feasible {
        ensure(f.inst.is_solution(&f.witness), || format!("{:?}: reported witness fails", f.inst))?;
        let x = extract_witness(&f.inst, &f.cert).map_err(|e| e.to_string())?;
        ensure(f.inst.is_solution(&x), || format!("{:?}: extracted {x:?} fails Ax = b", f.inst))?;
        for w in enumerate(&f.inst, 5).map_err(|e| e.to_string())?.witnesses {
            let cert = from_witness(&f.inst, &w).map_err(|e| e.to_string())?;
            ensure(cert.is_zero_one(), || format!("{:?}: from_witness({w:?}) not 0/1", f.inst))?;
            ensure(verify(&f.inst, &cert).is_valid(), || format!("{:?}: from_witness({w:?}) invalid", f.inst))?;
            let back = extract_witness(&f.inst, &cert).map_err(|e| e.to_string())?;
            ensure(f.inst.is_solution(&back), || format!("{:?}: round trip of {w:?} fails", f.inst))?;
            roundtrips += 1;
        }
    }
    Ok(format!("{} extracted witnesses exact, {roundtrips} from_witness round trips 0/1 and Valid", c.feasible.len()))
}

fn check_full_structure(inst: &Instance) -> Result<bool, String> {
    let Some(dm) = dims(inst).map_err(|e| e.to_string())? else { return Ok(false) };
    let bstar = dm.degree_bound_used.to_u64().expect("small b*");
    let m = inst.m() as u64;
    let max_col = (0..inst.n()).map(|j| inst.column_sum(j)).max().unwrap().to_u64().unwrap();
    ensure(dm.num_vars == s(bstar, m) * BigUint::from(inst.n()), || format!("{inst:?}: vars formula"))?;
    ensure(dm.num_rows == s(bstar + max_col, m), || format!("{inst:?}: rows formula"))?;
    let lp = assemble(inst, Assembly::Full).map_err(|e| e.to_string())?;
    ensure(BigUint::from(lp.num_vars()) == dm.num_vars, || format!("{inst:?}: assembled vars"))?;
    ensure(BigUint::from(lp.num_rows()) == dm.num_rows, || format!("{inst:?}: assembled rows"))?;
    for (k, col) in lp.columns.iter().enumerate() {
        ensure(col.iter().all(|&(_, v)| v == 1 || v == -1), || format!("{inst:?}: entry outside {{0, +-1}}"))?;
        let (j, alpha) = &lp.var_labels[k];
        let shifted = alpha.add(&inst.column_exponents(*j).unwrap());
        let minus: Vec<_> = col.iter().filter(|e| e.1 == -1).map(|e| &lp.row_labels[e.0]).collect();
        let plus: Vec<_> = col.iter().filter(|e| e.1 == 1).map(|e| &lp.row_labels[e.0]).collect();
        ensure(minus == [alpha] && plus == [&shifted], || format!("{inst:?}: column {k} shape"))?;
    }
    ensure(lp.rhs.iter().all(|&v| v == 1 || v == -1 || v == 0), || format!("{inst:?}: rhs"))?;
    Ok(true)
}

fn criterion_4(c: &Corpus) -> Outcome {
    let mut checked = 0;
    for inst in &c.nonneg {
        if check_full_structure(inst)? {
            checked += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(4);
    let mut knapsacks = 0;
    while knapsacks < 100 {
        let n = rng.gen_range(1..=4);
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
        let b = rng.gen_range(0..=25);
        let (lo, hi) = (*a.iter().min().unwrap(), *a.iter().max().unwrap());
        if b < lo {
            continue;
        }
        let inst = knapsack(&a, b);
        let dm = dims(&inst).map_err(|e| e.to_string())?.expect("b >= min a");
        let vars = n as i64 * (b + 1 - lo);
        let rows = b + 1 + hi - lo;
        ensure(dm.num_vars == BigUint::from(vars as u64) && dm.num_rows == BigUint::from(rows as u64), || {
            format!("knapsack a={a:?} b={b}: got {}/{}, want {vars}/{rows}", dm.num_vars, dm.num_rows)
        })?;
        check_full_structure(&inst)?;
        knapsacks += 1;
    }
    Ok(format!("{checked} full assemblies match n*s(b*) and s(b*+max colsum), {knapsacks} knapsack formulas, entries in {{0,+-1}}"))
}

fn box_volume(inst: &Instance) -> Option<u128> {
    discrete_farkas::box_bounds(inst)
        .ok()?
        .iter()
        .try_fold(1u128, |acc, &u| acc.checked_mul(u as u128 + 1))
}

fn criterion_5(c: &Corpus) -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut extra: Vec<Instance> = (0..100)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            let a: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=5)).collect();
            knapsack(&a, rng.gen_range(0..=40))
        })
        .collect();
    extra.push(Instance::from_i64(&[&[1, 2, 0], &[0, 1, 3]], &[0, 0]).unwrap());
    let mut compared = 0;
    for inst in c.nonneg.iter().chain(&extra) {
        if box_volume(inst).is_some_and(|v| v <= 1_000_000) {
            let series = count_series(inst).map_err(|e| e.to_string())?;
            let brute = enumerate(inst, 0).map_err(|e| e.to_string())?.count;
            ensure(series == brute, || format!("{inst:?}: series {series}, enumeration {brute}"))?;
            if inst.rhs_is_zero() {
                ensure(series.is_one(), || format!("{inst:?}: f(0) = {series}"))?;
            }
            compared += 1;
        }
    }
    let f = count_series(&knapsack(&[2, 3], 6)).map_err(|e| e.to_string())?;
    ensure(f == BigUint::from(2u32), || format!("f = {f} for a=(2,3), b=6"))?;
    Ok(format!("{compared} counts equal enumeration, f(0) = 1, f = 2 for a=(2,3) b=6"))
}

fn criterion_6(c: &mut Corpus) -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let (mut tested, mut feasible, mut drawn, mut too_big) = (0, 0, 0, 0);
    while tested < GENERAL_INSTANCES {
        drawn += 1;
        let inst = random_general(&mut rng);
        if !inst.zero_columns().is_empty() || !discrete_farkas::recession_cone_trivial(&inst) {
            continue;
        }
        let lift = match discrete_farkas::build_lifted(&inst) {
            Ok(l) => Some(l),
            Err(discrete_farkas::Error::EmptyRelaxation { .. }) => None,
            Err(e) => return Err(format!("{inst:?}: {e}")),
        };
        if let Some(l) = &lift {
            let size = pruned_dims(&l.lifted).map_err(|e| e.to_string())?;
            if size.is_some_and(|p| p.num_rows > BigUint::from(GENERAL_MAX_ROWS)) {
                too_big += 1;
                continue;
            }
            let formula = degree_bound(&l.lifted).map_err(|e| e.to_string())?;
            ensure(formula == l.degree_bound_closed_form(), || {
                format!("{inst:?}: b* on B = {formula}, closed form {}", l.degree_bound_closed_form())
            })?;
        }
        let d = check_general(&inst, Assembly::Pruned).map_err(|e| format!("{inst:?}: {e}"))?;
        let brute = enumerate(&inst, 1).map_err(|e| e.to_string())?.count > BigUint::zero();
        ensure((d.verdict == Verdict::Feasible) == brute, || format!("{inst:?}: lifted {:?}, brute {brute}", d.verdict))?;
        if let (Some(x), Some(l)) = (&d.witness, &d.lift) {
            ensure(inst.is_solution(x), || format!("{inst:?}: projected witness fails"))?;
            let ax: BigInt = l.alpha.iter().zip(x).map(|(a, &v)| a * BigInt::from(v)).sum();
            let u = &l.beta - ax;
            ensure(!u.is_negative(), || format!("{inst:?}: u = beta - alpha'x < 0"))?;
            let mut xu = x.clone();
            xu.push(u.to_u64().unwrap());
            ensure(l.lifted.is_solution(&xu), || format!("{inst:?}: (x, u) fails the lifted system"))?;
            feasible += 1;
            c.lifted_feasible.push(Feasible {
                inst: l.lifted.clone(),
                cert: d.certificate.clone().unwrap(),
                witness: xu,
            });
        }
        tested += 1;
    }
    Ok(format!(
        "{tested} compact instances ({feasible} feasible) match brute force, closed-form b* identical; {drawn} drawn, {too_big} skipped as too large"
    ))
}

fn criterion_7(c: &Corpus) -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let (mut points, mut dominated) = (0, 0);
    for f in c.feasible.iter().chain(&c.lifted_feasible) {
        for _ in 0..20 {
            let pt = EvaluationPoint::random(f.inst.m(), &mut rng);
            let out = eval_check(&f.inst, &f.cert, &pt).map_err(|e| e.to_string())?;
            ensure(out.passed(), || format!("{:?}: identity fails at {:?}: {out:?}", f.inst, pt.coords()))?;
            points += 1;
        }
        // every coordinate >= 1 makes every z^{A_j} >= 1
        for _ in 0..5 {
            let z: Vec<Rational> = (0..f.inst.m()).map(|_| q(rng.gen_range(6..=20), rng.gen_range(1..=6))).collect();
            let pt = EvaluationPoint::new(z.clone()).unwrap();
            ensure(eval_check(&f.inst, &f.cert, &pt).map_err(|e| e.to_string())?.passed(), || "eval".into())?;
            let lhs = &f.inst.rhs_exponents().unwrap().eval(&z) - &Rational::one();
            ensure(!lhs.is_negative(), || format!("{:?}: z^b - 1 < 0 at {z:?}", f.inst))?;
            dominated += 1;
        }
    }
    Ok(format!("{points} random points exact, {dominated} points with z^A_j >= 1 give z^b - 1 >= 0"))
}

fn beale() -> (EqualitySystem, Vec<Rational>) {
    let rows = vec![
        vec![r(1), r(0), r(0), q(1, 4), r(-8), r(-1), r(9)],
        vec![r(0), r(1), r(0), q(1, 2), r(-12), q(-1, 2), r(3)],
        vec![r(0), r(0), r(1), r(0), r(0), r(1), r(0)],
    ];
    let objective = vec![r(0), r(0), r(0), q(3, 4), r(-20), q(1, 2), r(-6)];
    (EqualitySystem::from_dense(&rows, vec![r(0), r(0), r(1)]), objective)
}

fn criterion_8(c: &Corpus) -> Outcome {
    let (mut feasible, mut infeasible) = (0, 0);
    for inst in &c.nonneg {
        for assembly in [Assembly::Pruned, Assembly::Full] {
            let Ok(lp) = assemble(inst, assembly) else { continue };
            let sys = lp.to_system();
            match solve_feasibility(&sys) {
                LpOutcome::Feasible { point, .. } => {
                    ensure(sys.is_satisfied_by(&point) && point.iter().all(|v| !v.is_negative()), || {
                        format!("{inst:?}: point does not re-substitute")
                    })?;
                    feasible += 1;
                }
                LpOutcome::Infeasible { multipliers } => {
                    let uc = dot(&multipliers, sys.rhs());
                    let cols_ok = (0..sys.num_cols())
                        .all(|j| sys.column(j).iter().map(|(i, v)| &multipliers[*i] * v).sum::<Rational>() <= Rational::zero());
                    ensure(cols_ok && uc.is_positive(), || format!("{inst:?}: multipliers fail"))?;
                    infeasible += 1;
                }
                LpOutcome::Unbounded { .. } => return Err("feasibility solve reported unbounded".into()),
            }
        }
    }
    let (sys, objective) = beale();
    let best = vertices(&sys).iter().map(|v| dot(&objective, v)).max().unwrap();
    match maximize(&objective, &sys, &[]) {
        LpOutcome::Feasible { point, objective: value } => {
            ensure(sys.is_satisfied_by(&point) && value == best, || format!("Beale: got {value}, oracle {best}"))?;
        }
        other => return Err(format!("Beale: {other:?}")),
    }
    Ok(format!("{feasible} feasible points re-substitute, {infeasible} multiplier certificates re-verify, Beale terminates at oracle optimum {best}"))
}

fn main() {
    let mut c = corpus();
    let mut results: Vec<(u32, &str, Outcome, f64)> = Vec::new();
    let mut timed = |n: u32, name: &'static str, f: &mut dyn FnMut(&mut Corpus) -> Outcome, c: &mut Corpus| {
        let start = Instant::now();
        let outcome = f(c);
        results.push((n, name, outcome, start.elapsed().as_secs_f64()));
    };
    timed(1, "discrete-Farkas equivalence", &mut criterion_1, &mut c);
    timed(2, "certificate exactness", &mut |c| criterion_2(c), &mut c);
    timed(3, "witness correctness", &mut |c| criterion_3(c), &mut c);
    timed(4, "LP dimensions", &mut |c| criterion_4(c), &mut c);
    timed(5, "counting", &mut |c| criterion_5(c), &mut c);
    timed(6, "general case", &mut criterion_6, &mut c);
    timed(7, "evaluation identity", &mut |c| criterion_7(c), &mut c);
    timed(8, "simplex soundness", &mut |c| criterion_8(c), &mut c);
    let mut failed = 0;
    for (n, name, outcome, secs) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n} ({name}): PASS [{secs:.1}s] - {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL [{secs:.1}s] - {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
