//! End-to-end acceptance criteria, each checked exactly and reported on one
//! PASS/FAIL line.

use std::io::Write;
use std::time::Instant;

use lie_homology::beads::{signed_dimension, signed_dimension_by_relations};
use lie_homology::characters::{inner_product, irreducible_character, littlewood_richardson, Decomposition};
use lie_homology::closedform::{
    bead_homology_formula, general_isotypical, isotypical_map, induction_values, sign_input_values, constant_input_values, column_isotypical, hook_isotypical, injection_homology_formula, InductionInput,
};
use lie_homology::exactlinalg::{rank, rat};
use lie_homology::freelie::truncation_comparison;
use lie_homology::homology::{beads_slice, decompose_h0, Model};
use lie_homology::irreps::{pieri_inclusion, seminormal, skew_surjection, EquivariantMap};
use lie_homology::partitions::{contains, partitions_of, Partition};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(parts: &[usize]) -> Partition {
    Partition::from_parts(parts)
}

fn ones(head: &[usize], k: usize) -> Partition {
    let mut parts = head.to_vec();
    parts.extend(std::iter::repeat_n(1, k));
    p(&parts)
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: String, got: T, expected: T) -> Result<(), String> {
    if got == expected {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {expected:?}"))
    }
}

fn hook_21(big_n: usize) -> Partition {
    ones(&[2], big_n - 2)
}

fn injection_homology() -> Outcome {
    let mut count = 0;
    for b in 1..=6 {
        for a in 1..=b {
            let brute = decompose_h0(a, b, Model::Injections).map_err(|e| e.to_string())?;
            expect_eq(format!("a={a} b={b}"), brute, injection_homology_formula(a, b))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs"))
}

fn bead_values() -> Outcome {
    let mut count = 0;
    for big_n in 1..=6usize {
        for n in big_n.div_ceil(2)..=big_n {
            let brute = decompose_h0(big_n, n, Model::Beads).map_err(|e| e.to_string())?;
            expect_eq(format!("N={big_n} n={n}"), brute, bead_homology_formula(big_n, n))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs"))
}

fn master_equivalence() -> Outcome {
    let mut count = 0;
    for big_n in 1..=7 {
        for rho in partitions_of(big_n) {
            for n in 1..=big_n {
                let closed = general_isotypical(&rho, n).map_err(|e| e.to_string())?;
                expect_eq(format!("rho={rho} n={n}"), closed.decomposition, beads_slice(&rho, n, true))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} slices"))
}

/// Nonzero rows of the column-shape table: `(N, m, lambdas)` with `n = N - m`.
fn column_table() -> Vec<(usize, usize, Vec<Partition>)> {
    vec![
        (1, 0, vec![p(&[1])]),
        (2, 0, vec![p(&[1, 1])]),
        (3, 0, vec![p(&[1, 1, 1])]),
        (3, 1, vec![p(&[2])]),
        (4, 0, vec![ones(&[], 4)]),
        (4, 1, vec![p(&[2, 1])]),
        (5, 0, vec![ones(&[], 5)]),
        (5, 1, vec![ones(&[2], 2)]),
        (5, 2, vec![p(&[3])]),
        (6, 0, vec![ones(&[], 6)]),
        (6, 1, vec![ones(&[2], 3)]),
        (6, 2, vec![p(&[3, 1])]),
        (7, 0, vec![ones(&[], 7)]),
        (7, 1, vec![ones(&[2], 4)]),
        (7, 2, vec![ones(&[3], 2)]),
        (7, 3, vec![p(&[4])]),
    ]
}

/// Nonzero rows of the `(2,1^{N-2})` table.
fn hook_table() -> Vec<(usize, usize, Vec<Partition>)> {
    vec![
        (3, 0, vec![p(&[2, 1])]),
        (4, 0, vec![ones(&[2], 2)]),
        (4, 1, vec![p(&[2, 1]), p(&[3])]),
        (5, 0, vec![ones(&[2], 3)]),
        (5, 1, vec![ones(&[2], 2), p(&[3, 1]), p(&[2, 2])]),
        (6, 0, vec![ones(&[2], 4)]),
        (6, 1, vec![ones(&[2], 3), ones(&[3], 2), ones(&[2, 2], 1)]),
        (6, 2, vec![p(&[2, 2]), p(&[3, 1]), p(&[4])]),
        (7, 0, vec![ones(&[2], 5)]),
        (7, 1, vec![ones(&[2], 4), ones(&[3], 3), ones(&[2, 2], 2)]),
        (7, 2, vec![ones(&[2, 2], 1), ones(&[3], 2), p(&[4, 1]), p(&[3, 2])]),
        (8, 0, vec![ones(&[2], 6)]),
        (8, 1, vec![ones(&[2], 5), ones(&[3], 4), ones(&[2, 2], 3)]),
        (8, 2, vec![ones(&[2, 2], 2), ones(&[3], 3), ones(&[4], 2), p(&[3, 2, 1])]),
        (8, 3, vec![p(&[3, 2]), p(&[4, 1]), p(&[5])]),
        (9, 0, vec![ones(&[2], 7)]),
        (9, 1, vec![ones(&[2], 6), ones(&[3], 5), ones(&[2, 2], 4)]),
        (9, 2, vec![ones(&[2, 2], 3), ones(&[3], 4), ones(&[4], 3), ones(&[3, 2], 2)]),
        (9, 3, vec![p(&[3, 2, 1]), ones(&[4], 2), p(&[5, 1]), p(&[4, 2])]),
    ]
}

fn expected_slice(table: &[(usize, usize, Vec<Partition>)], big_n: usize, n: usize) -> Decomposition {
    let mut d = Decomposition::zero(n);
    for (nn, m, lambdas) in table {
        if *nn == big_n && nn - m == n {
            for l in lambdas {
                d.insert(l.clone(), 1);
            }
        }
    }
    d
}

fn example_tables() -> Outcome {
    let mut count = 0;
    let column = column_table();
    for big_n in 1..=7 {
        let rho = Partition::column(big_n);
        for n in 1..=big_n {
            let expected = expected_slice(&column, big_n, n);
            let label = format!("column N={big_n} n={n}");
            let formula = column_isotypical(big_n, n).map_err(|e| e.to_string())?;
            expect_eq(format!("{label} formula"), formula.decomposition, expected.clone())?;
            let constructive = general_isotypical(&rho, n).map_err(|e| e.to_string())?;
            expect_eq(format!("{label} map"), constructive.decomposition, expected.clone())?;
            expect_eq(format!("{label} brute"), beads_slice(&rho, n, true), expected)?;
            count += 1;
        }
    }
    let hooks = hook_table();
    for big_n in 3..=9 {
        let rho = hook_21(big_n);
        for n in 1..=big_n {
            let expected = expected_slice(&hooks, big_n, n);
            let label = format!("hook N={big_n} n={n}");
            let formula = hook_isotypical(big_n, n).map_err(|e| e.to_string())?;
            expect_eq(format!("{label} formula"), formula.decomposition, expected.clone())?;
            let constructive = general_isotypical(&rho, n).map_err(|e| e.to_string())?;
            expect_eq(format!("{label} map"), constructive.decomposition, expected.clone())?;
            if big_n <= 7 {
                expect_eq(format!("{label} brute"), beads_slice(&rho, n, true), expected)?;
            }
            count += 1;
        }
    }
    // The zero row called out explicitly.
    expect_eq("hook N=3 m=1".into(), hook_isotypical(3, 2).map_err(|e| e.to_string())?.decomposition, Decomposition::zero(2))?;
    Ok(format!("{count} rows"))
}

fn injectivity() -> Outcome {
    let mut count = 0;
    for big_n in 3..=7 {
        let rho = hook_21(big_n);
        for m in 1..big_n {
            if big_n <= 2 * m {
                continue;
            }
            let n = big_n - m;
            let map = isotypical_map(&rho, n).map_err(|e| e.to_string())?;
            let source = ones(&[n - m], m - 1);
            let target = ones(&[n - m], m);
            let i = map.domain.iter().position(|b| b.index == source).ok_or(format!("N={big_n} m={m}: no block {source}"))?;
            let j = map.codomain.iter().position(|b| b.index == target).ok_or(format!("N={big_n} m={m}: no block {target}"))?;
            let block = map.component(i, j);
            expect_eq(format!("N={big_n} m={m} rank"), rank(&block), map.domain[i].rep.dim)?;
            count += 1;
        }
    }
    Ok(format!("{count} components"))
}

fn truncation() -> Outcome {
    let mut count = 0;
    for big_n in 1..=6 {
        let mut shapes = vec![Partition::column(big_n)];
        if big_n >= 2 {
            shapes.push(hook_21(big_n));
        }
        for rho in shapes {
            for n in 1..=big_n {
                let c = truncation_comparison(&rho, n).map_err(|e| e.to_string())?;
                expect_eq(format!("rho={rho} n={n}"), c.free, c.truncated)?;
                count += 1;
            }
        }
    }
    let c = truncation_comparison(&p(&[2, 2]), 2).map_err(|e| e.to_string())?;
    expect_eq("rho=[2,2] n=2".into(), (c.free_mult(), c.truncated_mult(), c.equal), (1, 0, false))?;
    Ok(format!("{count} agreements, 1 disagreement"))
}

fn one_dimensional_inputs() -> Outcome {
    let mut count = 0;
    for s in 1..=5 {
        for t in 1..=s + 2 {
            let triv = constant_input_values(s, t).map_err(|e| e.to_string())?;
            expect_eq(format!("constant s={s} t={t}"), induction_values(s, t, InductionInput::Trivial), triv)?;
            let sgn = sign_input_values(s, t).map_err(|e| e.to_string())?;
            expect_eq(format!("sign s={s} t={t}"), induction_values(s, t, InductionInput::Sign), sgn)?;
            count += 2;
        }
    }
    Ok(format!("{count} values"))
}

fn property_suites() -> Outcome {
    // Character orthonormality.
    for n in 1..=8 {
        let parts = partitions_of(n);
        let chars: Vec<_> = parts.iter().map(irreducible_character).collect();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let ip = inner_product(a, b).map_err(|e| e.to_string())?;
                expect_eq(format!("<{},{}>", parts[i], parts[j]), ip, rat((i == j) as i64))?;
            }
        }
    }
    // Seminormal generator relations and characters.
    for n in 1..=7 {
        for lambda in partitions_of(n) {
            let rep = seminormal(&lambda);
            expect_eq(format!("relations {lambda}"), rep.check_relations(), true)?;
            expect_eq(format!("character {lambda}"), rep.character(), irreducible_character(&lambda))?;
        }
    }
    // Littlewood–Richardson symmetries.
    for size in 0..=8 {
        for lambda in partitions_of(size) {
            for a in 0..=size {
                for alpha in partitions_of(a).into_iter().filter(|al| contains(al, &lambda)) {
                    for beta in partitions_of(size - a) {
                        let c = littlewood_richardson(&lambda, &alpha, &beta);
                        expect_eq(format!("swap {lambda} {alpha} {beta}"), littlewood_richardson(&lambda, &beta, &alpha), c)?;
                        expect_eq(
                            format!("transpose {lambda} {alpha} {beta}"),
                            littlewood_richardson(&lambda.transpose(), &alpha.transpose(), &beta.transpose()),
                            c,
                        )?;
                    }
                }
            }
        }
    }
    // Equivariance of every constructed map.
    let mut maps = 0;
    for size in 1..=6 {
        for lambda in partitions_of(size) {
            for alpha in (1..size).flat_map(partitions_of).filter(|al| contains(al, &lambda)) {
                for beta in alpha.removable_rows().into_iter().filter_map(|r| alpha.remove_box(r)) {
                    let incl = pieri_inclusion(&beta, &alpha).map_err(|e| e.to_string())?;
                    let surj = skew_surjection(&lambda, &beta, &alpha).map_err(|e| e.to_string())?;
                    expect_eq(format!("pieri {beta} {alpha}"), incl.is_equivariant(), true)?;
                    expect_eq(format!("surjection {lambda} {beta} {alpha}"), surj.is_equivariant(), true)?;
                    maps += 2;
                }
            }
        }
    }
    for big_n in 1..=6 {
        for rho in partitions_of(big_n) {
            for n in 1..=big_n {
                let m = isotypical_map(&rho, n).map_err(|e| e.to_string())?;
                let f = EquivariantMap {
                    source: m.domain_rep.clone(),
                    target: m.codomain_rep.clone(),
                    matrix: m.matrix.clone(),
                };
                expect_eq(format!("isotypical map {rho} n={n}"), f.is_equivariant(), true)?;
                maps += 1;
            }
        }
    }
    // Dimensions of signed bead arrangements.
    for big_n in 1..=8 {
        for n in 1..=big_n {
            expect_eq(
                format!("signed dimension N={big_n} n={n}"),
                signed_dimension_by_relations(big_n, n),
                signed_dimension(big_n, n),
            )?;
        }
    }
    expect_eq("signed dimension (8,5)".into(), signed_dimension(8, 5), 50400)?;
    Ok(format!("{maps} maps equivariant"))
}

/// Writes straight to stderr so the lines survive the test harness's output
/// capture.
fn report(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 injection homology", injection_homology),
        ("2 bead values", bead_values),
        ("3 master equivalence", master_equivalence),
        ("4 example tables", example_tables),
        ("5 injectivity", injectivity),
        ("6 truncation", truncation),
        ("7 one-dimensional inputs", one_dimensional_inputs),
        ("8 property suites", property_suites),
    ];
    let mut failures = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(summary) => report(&format!("PASS [{name}] {summary} ({secs:.1}s)")),
            Err(why) => {
                report(&format!("FAIL [{name}] {why} ({secs:.1}s)"));
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
