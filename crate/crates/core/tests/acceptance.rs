//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropineq::oracle::{random_instance, random_matrix, random_regular_vector};
use tropineq::*;

fn m(text: &str) -> Matrix {
    parse_matrix(&text.replace(';', "\n")).expect("matrix literal")
}

fn q(x: i64) -> Scalar {
    Scalar::from_i64(x)
}

fn ex1() -> Instance {
    ProblemInstance::new(m("0 2 3; -inf -1 3; 3 2 -1"), m("2 -1 2; 1 0 2; -1 3 1")).unwrap()
}

fn ex2() -> Instance {
    ProblemInstance::new(
        m("-inf -inf -inf 0 4 2 6; -inf 5 6 -inf -inf -inf 2"),
        m("0 1 5 -inf -inf -inf -inf; 3 -inf -inf 0 2 4 -inf"),
    )
    .unwrap()
}

/// The criterion-3 instance set: 80 seeds, each at three zero densities.
fn random_set() -> Vec<(u64, f64, Instance)> {
    let mut out = Vec::new();
    for seed in 0..80u64 {
        for density in [0.0f64, 0.2, 0.4] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9) ^ density.to_bits());
            let rows = 1 + (seed % 4) as usize;
            let cols = 1 + ((seed / 4) % 4) as usize;
            out.push((seed, density, random_instance(&mut rng, rows, cols, density, (-3, 3))));
        }
    }
    out
}

struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }
}

fn criterion_1(c: &mut Check) {
    let inst = ex1();
    let r = refine(&inst);
    c.expect(
        r.a_hat == m("-inf 2 3; -inf -inf 3; 3 -inf -inf") && r.b_hat == m("2 -inf -inf; 1 0 -inf; -inf 3 1"),
        "refined pair",
    );
    let cands = generate_candidates(&r.a_hat, &r.b_hat).unwrap();
    let gs: Vec<Matrix> = cands.iter().map(|k| k.g.clone()).collect();
    c.expect(
        gs == vec![
            m("2 -inf -inf; 1 -inf -inf; -inf 3 -inf"),
            m("2 -inf -inf; 1 -inf -inf; -inf -inf 1"),
        ],
        "candidates {G1, G2}",
    );
    let sol = solve(&inst).unwrap();
    let e = &sol.evaluations;
    c.expect(e.len() == 2 && e[0].accepted, "G1 accepted");
    c.expect(
        e.len() == 2 && !e[1].accepted && e[1].rejection.as_ref().map(|r| &r.trace) == Some(&q(4)),
        "G2 rejected with trace 4",
    );
    c.expect(sol.s == Some(m("0 2; 0 2; -inf 0")), "S = [(0,0,-inf), (2,2,0)]");
}

fn criterion_2(c: &mut Check) {
    let inst = ex2();
    let sol = solve(&inst).unwrap();
    let listed_g = [
        "0 -inf -inf -inf -inf -inf -inf; 3 -inf -inf -inf -inf -inf -inf",
        "-inf 1 -inf -inf -inf -inf -inf; 3 -inf -inf -inf -inf -inf -inf",
        "-inf 1 -inf -inf -inf -inf -inf; -inf -inf -inf 0 -inf -inf -inf",
        "-inf 1 -inf -inf -inf -inf -inf; -inf -inf -inf -inf 2 -inf -inf",
        "-inf 1 -inf -inf -inf -inf -inf; -inf -inf -inf -inf -inf 4 -inf",
        "-inf -inf 5 -inf -inf -inf -inf; 3 -inf -inf -inf -inf -inf -inf",
        "-inf -inf 5 -inf -inf -inf -inf; -inf -inf -inf 0 -inf -inf -inf",
        "-inf -inf 5 -inf -inf -inf -inf; -inf -inf -inf -inf 2 -inf -inf",
        "-inf -inf 5 -inf -inf -inf -inf; -inf -inf -inf -inf -inf 4 -inf",
    ];
    let gs: Vec<Matrix> = sol.evaluations.iter().map(|e| e.candidate.g.clone()).collect();
    let expected: Vec<Matrix> = listed_g.iter().map(|t| m(t)).collect();
    c.expect(gs == expected, "nine candidates G1..G9");

    let accepted: Vec<usize> = (0..gs.len())
        .filter(|&i| sol.evaluations[i].accepted)
        .map(|i| i + 1)
        .collect();
    c.expect(accepted == vec![1, 6, 9], format!("accepted {accepted:?}"));

    let traces = [(2, 1), (3, 4), (4, 6), (5, 2), (7, 1), (8, 3)];
    let traces_ok = sol.evaluations.len() == 9
        && traces.iter().all(|&(i, t)| {
            sol.evaluations[i - 1]
                .rejection
                .as_ref()
                .is_some_and(|r| r.k == 2 && r.trace == q(t))
        });
    c.expect(traces_ok, "rejection traces tr F_i^2 = 1,4,6,2,1,3");

    let s1 = m("0 2 5 0 4 2 6;
                -inf 0 -inf -inf -inf -inf -inf;
                -inf -inf 0 -inf -inf -inf -inf;
                -inf -inf -inf 0 -inf -inf -inf;
                -inf -inf -inf -inf 0 -inf -inf;
                -inf -inf -inf -inf -inf 0 -inf;
                -inf -inf -inf -inf -inf -inf 0");
    let s6 = m("0 2 3 -2 2 1 4;
                -inf 0 -inf -inf -inf -inf -inf;
                -5 -3 0 -5 -1 -3 1;
                -inf -inf -inf 0 -inf -inf -inf;
                -inf -inf -inf -inf 0 -inf -inf;
                -inf -inf -inf -inf -inf 0 -inf;
                -inf -inf -inf -inf -inf -inf 0");
    let s9 = m("0 -inf -inf -inf -inf -inf -inf;
                -inf 0 -inf -inf -inf -inf -inf;
                -4 -2 0 -5 -1 -3 1;
                -inf -inf -inf 0 -inf -inf -inf;
                -inf -inf -inf -inf 0 -inf -inf;
                -1 1 2 -3 1 0 3;
                -inf -inf -inf -inf -inf -inf 0");
    let gens: Vec<Option<Matrix>> = sol.evaluations.iter().map(|e| e.generator.clone()).collect();
    c.expect(
        gens.len() == 9 && gens[0] == Some(s1.clone()) && gens[5] == Some(s6.clone()) && gens[8] == Some(s9.clone()),
        "generators S1, S6, S9",
    );

    let s16 = s1.hcat(&s6.select_columns(&[2, 3, 4, 5, 6])).unwrap();
    let s = sol.s.clone().unwrap();
    let prefix: Vec<usize> = (0..12.min(s.cols())).collect();
    c.expect(s.select_columns(&prefix) == s16, "S begins with S1,6");
    c.expect(s.cols() == 12, format!("S has exactly 12 columns (found {})", s.cols()));
    let dependent: Vec<bool> = s9
        .columns()
        .map(|col| is_dependent(&s16, &TropMatrix::column_vector(col)).unwrap().dependent)
        .collect();
    c.expect(
        dependent.iter().all(|&d| d),
        format!("every S9 column dependent on S1,6 (exact test: {dependent:?})"),
    );
    let x = TropMatrix::column_vector([-4, 0, -2, -10, -10, 1, -10].map(q).to_vec());
    c.expect(
        check_solution(&inst, &x).unwrap()
            && !is_dependent(&s16, &x).unwrap().dependent
            && is_dependent(&s, &x).unwrap().dependent,
        "regular solution (-4,0,-2,-10,-10,1,-10) lies outside span(S1,6) and inside span(S)",
    );
}

fn criterion_3(c: &mut Check) {
    let set = random_set();
    let mut bad = 0;
    for (seed, density, inst) in &set {
        let report = compare_pipelines(
            inst,
            &OracleConfig {
                trials: 0,
                ..Default::default()
            },
        )
        .unwrap();
        if !(report.spans_equal && report.verdicts_equal) {
            bad += 1;
            c.failures.push(format!("seed {seed} density {density}"));
        }
    }
    c.expect(bad == 0, format!("{} instances, {bad} mismatches", set.len()));
}

fn criterion_4(c: &mut Check) {
    let mut instances = vec![ex1(), ex2()];
    instances.extend(
        random_set()
            .into_iter()
            .map(|(_, _, inst)| inst)
            .filter(|inst| solve(inst).unwrap().kind == SolutionKind::Generators),
    );
    let mut failures = 0;
    for (idx, inst) in instances.iter().enumerate() {
        let s = solve(inst).unwrap().s.unwrap();
        failures += sample_soundness(inst, &s, 1000, idx as u64).unwrap();
    }
    c.expect(
        failures == 0,
        format!("{} instances x 1000 samples, {failures} failures", instances.len()),
    );
}

fn criterion_5(c: &mut Check) {
    let set = random_set();
    let mut disagreements = 0;
    for (idx, (_, _, inst)) in set.iter().enumerate() {
        let r = refine(inst);
        let refined = ProblemInstance::new(r.a_hat.clone(), r.b_hat.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(idx as u64);
        for _ in 0..100 {
            let x: Matrix = random_regular_vector(&mut rng, inst.cols(), (-10, 10));
            let before = check_solution(inst, &x).unwrap();
            let after = match &refined {
                Ok(p) => check_solution(p, &x).unwrap(),
                // Every row eliminated.
                Err(_) => true,
            };
            if before != after {
                disagreements += 1;
            }
        }
    }
    c.expect(
        disagreements == 0,
        format!("{} instances x 100 vectors, {disagreements} disagreements", set.len()),
    );
}

fn monomial(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let mut g = Matrix::zeros(rows, cols);
    for i in 0..rows {
        let j = rng.gen_range(0..cols);
        g.set(i, j, q(rng.gen_range(-5..=5)));
    }
    g
}

/// Max over k = 1..n of tr Aᵏ, from explicit powers.
fn max_cycle_trace(a: &Matrix) -> Scalar {
    let mut power = a.clone();
    let mut best = power.trace().unwrap();
    for _ in 1..a.rows() {
        power = power.mul(a).unwrap();
        best = best.max(power.trace().unwrap());
    }
    best
}

fn criterion_6(c: &mut Check) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let one = Scalar::one();

    let mut conj = 0;
    for _ in 0..100 {
        let (rows, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let g = monomial(&mut rng, rows, cols);
        let gc = g.conjugate();
        let mut ok = gc.mul(&g).unwrap().leq(&Matrix::identity(cols)).unwrap()
            && Matrix::identity(rows).leq(&g.mul(&gc).unwrap()).unwrap();
        let x: Matrix = random_regular_vector(&mut rng, cols, (-6, 6));
        let y: Matrix = random_regular_vector(&mut rng, rows, (-6, 6));
        ok &= y.leq(&g.mul(&x).unwrap()).unwrap() == gc.mul(&y).unwrap().leq(&x).unwrap();
        conj += ok as usize;
    }
    c.expect(conj == 100, format!("monomial conjugate bounds {conj}/100"));

    let mut cyclic = 0;
    for _ in 0..100 {
        let (rows, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let a: Matrix = random_matrix(&mut rng, rows, cols, 0.3, (-3, 3));
        let b: Matrix = random_matrix(&mut rng, cols, rows, 0.3, (-3, 3));
        cyclic += (a.mul(&b).unwrap().trace().unwrap() == b.mul(&a).unwrap().trace().unwrap()) as usize;
    }
    c.expect(cyclic == 100, format!("trace cyclicity {cyclic}/100"));

    let mut stars = 0;
    let mut drawn = 0;
    while drawn < 100 {
        let n = rng.gen_range(1..=6);
        let a: Matrix = random_matrix(&mut rng, n, n, 0.4, (-6, 1));
        if max_cycle_trace(&a) > one {
            continue;
        }
        drawn += 1;
        let star = a.kleene_star().unwrap();
        let fix = Matrix::identity(n).add(&a.mul(&star).unwrap()).unwrap();
        let mut sum = Matrix::identity(n);
        let mut power = Matrix::identity(n);
        for _ in 1..n {
            power = power.mul(&a).unwrap();
            sum = sum.add(&power).unwrap();
        }
        stars += (fix == star && sum == star) as usize;
    }
    c.expect(stars == 100, format!("star fixpoint and power sum {stars}/100"));

    let (mut agree, mut convergent) = (0, 0);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let shift = q(-rng.gen_range(0..=4));
        let a = random_matrix::<Rational, _>(&mut rng, n, n, 0.3, (-3, 3)).scalar_mul(&shift);
        let inst = ProblemInstance::new(a.clone(), Matrix::identity(n)).unwrap();
        let sol = solve(&inst).unwrap();
        let ok = if max_cycle_trace(&a) <= one {
            convergent += 1;
            sol.s
                .as_ref()
                .is_some_and(|s| span_equivalent(s, &a.kleene_star().unwrap()).unwrap())
        } else {
            sol.kind == SolutionKind::NoRegular
        };
        agree += ok as usize;
    }
    c.expect(
        agree == 100,
        format!("B = I dichotomy {agree}/100 ({convergent} convergent)"),
    );
}

fn criterion_7(c: &mut Check) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ok = true;
    for rows in 1..=6 {
        for cols in 1..=6 {
            let a = Matrix::zeros(rows, cols);
            let b: Matrix = random_matrix(&mut rng, rows, cols, 0.0, (-3, 3));
            let pruned = generate_candidates(&a, &b).unwrap();
            let selectors = pruned.len() == cols
                && pruned
                    .iter()
                    .enumerate()
                    .all(|(j, k)| k.selection.iter().all(|&s| s == j));
            let full = enumerate_all(&b, DEFAULT_CANDIDATE_CAP).unwrap().len();
            if !(selectors && full == cols.pow(rows as u32)) {
                ok = false;
                c.failures
                    .push(format!("{rows}x{cols}: {} pruned, {full} exhaustive", pruned.len()));
            }
        }
    }
    c.expect(ok, "n column selectors vs n^m exhaustive, sizes up to 6x6");
}

fn criterion_8(c: &mut Check) {
    for (name, inst) in [("first instance", ex1()), ("second instance", ex2())] {
        let t = solve(&inst).unwrap().report.timing;
        c.notes.push(format!(
            "{name}: refine {}us generate {}us evaluate {}us assemble {}us total {}us",
            t.refine_us, t.generate_us, t.evaluate_us, t.assemble_us, t.total_us
        ));
    }
}

type Criterion = fn(&mut Check);

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("first worked instance", criterion_1),
        ("second worked instance", criterion_2),
        ("oracle span equivalence", criterion_3),
        ("soundness sampling", criterion_4),
        ("refinement preservation", criterion_5),
        ("algebraic identities", criterion_6),
        ("worst-case pruning", criterion_7),
        ("timing report (not asserted)", criterion_8),
    ];
    let mut failed = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let mut check = Check::new();
        run(&mut check);
        let verdict = if check.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {}: {name}", idx + 1);
        for note in &check.notes {
            println!("    ok   {note}");
        }
        for failure in &check.failures {
            println!("    FAIL {failure}");
        }
        failed += !check.failures.is_empty() as usize;
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
