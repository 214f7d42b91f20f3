//! Acceptance battery: one PASS/FAIL line per criterion. Exits non-zero if
//! any criterion fails.

mod common;

use std::fs;
use std::time::Instant;

use common::{brute_injective, brute_surjective, rng, v1};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rtm::format::*;
use rtm::quotients::{lef_check, phi};
use rtm::reversibility::{average_movement, invert, is_reversible, measure_defect};
use rtm::sample::{random_local_permutation, random_reversible, random_rfa, random_rule, random_state_permutation};
use rtm::synthesis::*;
use rtm::torsion::{decide_torsion_rfa1, power_is_identity, quotient_order_lcm, verify_certificate, TorsionVerdict};
use rtm::vector::hypercube;
use rtm::zoo::*;
use rtm::{apply_moving_head, compose, compose_seq, Dims, Error, Machine};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Random rules and random reversible machines (d = 1, n = 2, k ∈ {1, 2},
/// radius ≤ 1), followed by all 36 classical rules for n = 2, k = 1.
fn corpus() -> Vec<Machine> {
    let mut r = rng(1001);
    let mut out = Vec::new();
    for i in 0..1200 {
        let dims = Dims::new(1, 2, 1 + (i % 2) as u32);
        out.push(if i % 3 == 0 { random_reversible(&mut r, dims, 1) } else { random_rule(&mut r, dims, 1) });
    }
    out.extend(all_classical_rules(Dims::new(1, 2, 1)));
    out
}

fn c1(corpus: &[Machine]) -> Outcome {
    let mut rev = 0;
    for m in corpus {
        let a = is_reversible(m);
        rev += a as usize;
        check(a == brute_injective(m), || format!("disagreement on {m:?}"))?;
    }
    Ok(format!("{} machines, {rev} reversible", corpus.len()))
}

fn c2(corpus: &[Machine]) -> Outcome {
    for m in corpus {
        let a = is_reversible(m);
        let inj = brute_injective(m);
        let sur = brute_surjective(m);
        let zero = measure_defect(m).is_zero();
        check(a == inj && inj == sur && sur == zero, || {
            format!("rev={a} inj={inj} sur={sur} defect0={zero} on {m:?}")
        })?;
    }
    Ok(format!("{} machines", corpus.len()))
}

fn c3() -> Outcome {
    for n in [2u32, 3] {
        for m in 1..=4usize {
            let a = average_movement(&surf_machine(Dims::new(1, n, 1), m).unwrap());
            check(a == vec![q(1, (n as i64).pow(m as u32))], || format!("surf n={n} m={m}: {a:?}"))?;
        }
    }
    for k in 2..=4u32 {
        let a = average_movement(&state_cycler(Dims::new(1, 2, k), 0).unwrap());
        check(a == vec![q(1, k as i64)], || format!("cycler k={k}: {a:?}"))?;
    }
    let d = measure_defect(&write_zero(Dims::new(1, 2, 1)).unwrap());
    check(d == q(1, 2), || format!("write-0 defect {d}"))?;
    Ok("surf 1/n^m, cycler 1/k, write-0 defect 1/2".into())
}

fn c4() -> Outcome {
    let mut r = rng(1004);
    let dims = Dims::new(1, 2, 2);
    for _ in 0..100 {
        let (a, b) = (random_reversible(&mut r, dims, 1), random_reversible(&mut r, dims, 1));
        let sum: Vec<BigRational> = average_movement(&a)
            .into_iter()
            .zip(average_movement(&b))
            .map(|(x, y)| x + y)
            .collect();
        check(average_movement(&compose(&a, &b).unwrap()) == sum, || "alpha not additive".into())?;
    }
    for _ in 0..100 {
        let (a, b) = (random_rfa(&mut r, dims, 1), random_rfa(&mut r, dims, 1));
        let ab = compose(&a, &b).unwrap();
        for m in 2..=4 {
            let (pa, pb, pab) = (phi(&a, m).unwrap(), phi(&b, m).unwrap(), phi(&ab, m).unwrap());
            check(pab == pa.after(&pb), || format!("phi not multiplicative at m={m}"))?;
            check(pab.sign() == pa.sign() * pb.sign(), || format!("sign not multiplicative at m={m}"))?;
        }
    }
    Ok("100 alpha pairs, 100 RFA pairs over m = 2, 3, 4".into())
}

fn c5() -> Outcome {
    let all = all_classical_rules(Dims::new(1, 2, 1));
    let rev = all.iter().filter(|m| brute_injective(m)).count();
    check(all.len() == 36 && rev == 6, || format!("{rev} of {}", all.len()))?;
    check(all.iter().filter(|m| is_reversible(m)).count() == 6, || "is_reversible count".into())?;
    let mut trips = 0;
    for k in 1..=2 {
        let dims = Dims::new(1, 2, k);
        for m in all_classical_rules(dims).iter().filter(|m| is_reversible(m)) {
            let dc = classical_decompose(m).map_err(|e| e.to_string())?;
            check(&compose(&dc.shift, &dc.permutation).unwrap() == m, || "product differs".into())?;
            let again = classical_from_parts(dims, &dc.perm, &dc.directions).unwrap();
            let dc2 = classical_decompose(&compose(&again.shift, &again.permutation).unwrap()).unwrap();
            check(dc2.perm == dc.perm && dc2.directions == dc.directions, || "pair differs".into())?;
            trips += 1;
        }
    }
    Ok(format!("6 of 36 reversible; {trips} round trips"))
}

fn c6() -> Outcome {
    let mut r = rng(1006);
    for i in 0..200 {
        let dims = Dims::new(1 + (i % 5 == 0) as usize, 2, 1 + (i % 2) as u32);
        let m = random_reversible(&mut r, dims, 1);
        let inv = invert(&m).map_err(|e| e.to_string())?;
        check(compose(&inv, &m).unwrap().is_identity(), || format!("inv∘T on {m:?}"))?;
        check(compose(&m, &inv).unwrap().is_identity(), || format!("T∘inv on {m:?}"))?;
    }
    Ok("200 machines".into())
}

fn c7() -> Outcome {
    let dims = Dims::new(1, 2, 1);
    let t = [involution_walker(dims, 0).unwrap(), involution_walker(dims, 1).unwrap()];
    let mut count = 0;
    for len in 1..=6u32 {
        for first in 0..2u32 {
            let w: Vec<u32> = (0..len).map(|i| (first + i) % 2).collect();
            let m = compose_seq(dims, w.iter().map(|&a| &t[a as usize])).unwrap();
            check(!m.is_identity(), || format!("{w:?} is the identity"))?;
            let x = free_product_witness(dims, &w).unwrap();
            let y = apply_moving_head(&m, &x).unwrap();
            check(y.head == Some((v1(len as i64), 1)), || format!("{w:?} moved to {:?}", y.head))?;
            count += 1;
        }
    }
    Ok(format!("{count} reduced words"))
}

fn c8() -> Outcome {
    let start = Instant::now();
    let d1 = Dims::new(1, 2, 1);
    let mut ms = vec![
        (involution_walker(d1, 0).unwrap(), Some(2u64)),
        (shift_machine(d1, &v1(1)).unwrap(), None),
        (state_cycler(Dims::new(1, 2, 2), 0).unwrap(), None),
    ];
    let mut r = rng(1008);
    for _ in 0..50 {
        ms.push((random_rfa(&mut r, Dims::new(1, 2, 2), 1), None));
    }
    let (mut fin, mut inf) = (0, 0);
    for (i, (m, expect_finite)) in ms.iter().enumerate() {
        match decide_torsion_rfa1(m).map_err(|e| e.to_string())? {
            TorsionVerdict::Finite(o) => {
                fin += 1;
                if let Some(e) = expect_finite {
                    check(o == *e, || format!("walker order {o}"))?;
                }
                check(power_is_identity(m, o), || format!("machine {i}: T^{o} is not the identity"))?;
                let lcm = quotient_order_lcm(m, &[2, 3, 4]).unwrap();
                check(BigUint::from(o).is_multiple_of(&lcm), || format!("machine {i}: lcm {lcm} order {o}"))?;
            }
            TorsionVerdict::Infinite(c) => {
                inf += 1;
                check(i != 0, || "walker reported infinite".into())?;
                check(verify_certificate(m, &c), || format!("machine {i}: bad certificate"))?;
            }
            TorsionVerdict::Unknown(_) => return Err("unknown verdict".into()),
        }
        if i == 1 || i == 2 {
            check(inf == i, || format!("machine {i} reported finite"))?;
        }
    }
    Ok(format!("{fin} finite, {inf} infinite in {:.1?}", start.elapsed()))
}

fn c9() -> Outcome {
    let mut r = rng(1009);
    let dims = Dims::new(1, 2, 2);
    for i in 0..20 {
        let ms = vec![random_reversible(&mut r, dims, 1), random_reversible(&mut r, dims, 1)];
        let rep = lef_check(&ms, 1).map_err(|e| e.to_string())?;
        check(rep.period == 8 && rep.holds, || format!("set {i}: {:?}", rep.witness))?;
    }
    Ok("20 sets over Y_8".into())
}

fn round_trip(m: &Machine) -> Result<usize, String> {
    let w = synthesize_ob(m).map_err(|e| e.to_string())?;
    check(w.tokens.iter().all(|t| is_generator(m.dims(), t)), || "token outside the generating set".into())?;
    check(&eval_word(&w).map_err(|e| e.to_string())? == m, || format!("round trip failed for {m:?}"))?;
    Ok(w.tokens.len())
}

fn c10() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1010);
    let mut words = 0;
    let mut longest = 0;
    for k in 1..=2 {
        let dims = Dims::new(1, 2, k);
        let mut zoo_lp = vec![
            Machine::identity(dims),
            cell_swap(dims, 0).unwrap(),
            cell_permutation(dims, &[(v1(0), v1(1)), (v1(1), v1(0))]).unwrap(),
            cell_permutation(dims, &[(v1(-1), v1(1)), (v1(1), v1(-1))]).unwrap(),
        ];
        for sup in [vec![v1(0)], vec![v1(0), v1(1)], vec![v1(-1), v1(1)]] {
            zoo_lp.push(random_state_permutation(&mut r, dims, &sup));
        }
        for m in &zoo_lp {
            longest = longest.max(round_trip(m)?);
            words += 1;
        }
    }
    for i in 0..50 {
        let dims = Dims::new(1, 2, 1 + (i % 2) as u32);
        let size = 1 + i % 5;
        let mut pool = hypercube(1, 2);
        pool.shuffle(&mut r);
        let lp = random_local_permutation(&mut r, dims, &pool[..size]);
        longest = longest.max(round_trip(&lp)?);
        words += 1;
    }
    // parity: odd targets are obstructed exactly when n is even and no wire is borrowed
    let mut odd_seen = 0;
    for (n, k) in [(2u32, 1u32), (2, 2)] {
        let s = PointSpace::new(n, k, 6);
        for _ in 0..10 {
            let mut p: Vec<usize> = (0..s.size()).collect();
            p.shuffle(&mut r);
            let res = reduce_to_width4(s, &p, false);
            if is_even(&p) {
                let red = res.map_err(|e| e.to_string())?;
                check(applications_product(s, &red.apps) == p, || "even reduction wrong".into())?;
            } else {
                odd_seen += 1;
                check(res == Err(Error::ParityObstruction), || "odd target not obstructed".into())?;
                let red = reduce_to_width4(s, &p, true).map_err(|e| e.to_string())?;
                check(applications_product(red.space, &red.apps) == widen(s, &p).1, || "ancilla reduction wrong".into())?;
            }
        }
    }
    let s3 = PointSpace::new(3, 1, 6);
    let mut p: Vec<usize> = (0..s3.size()).collect();
    p.shuffle(&mut r);
    if is_even(&p) {
        p.swap(0, 1);
    }
    let red = reduce_to_width4(s3, &p, false).map_err(|e| e.to_string())?;
    check(applications_product(s3, &red.apps) == p, || "odd n reduction wrong".into())?;
    check(odd_seen > 0, || "no odd samples".into())?;
    Ok(format!("{words} words (longest {longest} tokens), parity law on {odd_seen} odd targets, in {:.1?}", start.elapsed()))
}

fn c11() -> Outcome {
    let s = PointSpace::new(2, 1, 6);
    let mut r = rng(1011);
    let mut tested = 0;
    while tested < 200 {
        let c: [usize; 3] = [r.gen_range(0..64), r.gen_range(0..64), r.gen_range(0..64)];
        if controlled_corner(s, c).is_none() {
            continue;
        }
        let apps = three_cycle_from_swaps(s, c).map_err(|e| e.to_string())?;
        check(apps.iter().all(|a| a.width() == 4), || "swap wider than four wires".into())?;
        check(applications_product(s, &apps) == cycle3(s.size(), c), || format!("{c:?}"))?;
        tested += 1;
    }
    Ok(format!("{tested} controlled 3-cycles"))
}

fn golden(args: &[&str]) -> String {
    let (code, out, err) = rtm::cli::run(std::iter::once("rtm").chain(args.iter().copied()));
    format!("exit={code}\n--- stdout\n{out}--- stderr\n{err}")
}

fn c12() -> Outcome {
    let mut n = 0;
    let mut paths: Vec<_> = fs::read_dir("tests/fixtures").unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    for p in &paths {
        let name = p.display().to_string();
        if name.contains("bad_") {
            continue;
        }
        let text = fs::read_to_string(p).unwrap();
        let again = match p.extension().and_then(|e| e.to_str()) {
            Some("rtm") => serialize_machine(&parse_rule(&text).map_err(|e| format!("{name}: {e}"))?),
            Some("cfg") => serialize_config(&parse_config(&text).map_err(|e| format!("{name}: {e}"))?),
            Some("cert") => serialize_certificate(&parse_certificate(&text).map_err(|e| format!("{name}: {e}"))?),
            Some("word") => serialize_word(&parse_word(&text).map_err(|e| format!("{name}: {e}"))?),
            _ => continue,
        };
        let third = match p.extension().and_then(|e| e.to_str()) {
            Some("rtm") => serialize_machine(&parse_rule(&again).unwrap()),
            Some("cfg") => serialize_config(&parse_config(&again).unwrap()),
            Some("cert") => serialize_certificate(&parse_certificate(&again).unwrap()),
            _ => serialize_word(&parse_word(&again).unwrap()),
        };
        check(again == third, || format!("{name} is not a fixpoint"))?;
        n += 1;
    }
    let cases: &[&[&str]] = &[
        &["alpha", "tests/fixtures/surf_n2_m2.rtm"],
        &["torsion-rfa1", "tests/fixtures/walker_a.rtm"],
        &["torsion-rfa1", "tests/fixtures/cycler_k2.rtm"],
        &["quotient", "tests/fixtures/walker_a.rtm", "--period", "3"],
        &["synth", "tests/fixtures/swap.rtm"],
        &["check", "tests/fixtures/write0.rtm"],
    ];
    for args in cases {
        check(golden(args) == golden(args), || format!("{args:?} differs between runs"))?;
    }
    check(golden(cases[0]).contains("\n1/4\n"), || "alpha golden".into())?;
    check(golden(cases[1]).contains("finite order=2"), || "torsion golden".into())?;
    Ok(format!("{n} fixtures, {} golden commands", cases.len()))
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("reversibility oracle equivalence", Box::new(|| c1(&corpus))),
        ("injective = surjective = reversible = zero defect", Box::new(|| c2(&corpus))),
        ("exact constants", Box::new(c3)),
        ("homomorphism laws", Box::new(c4)),
        ("classical decomposition", Box::new(c5)),
        ("inversion", Box::new(c6)),
        ("free product witness", Box::new(c7)),
        ("torsion battery", Box::new(c8)),
        ("LEF check", Box::new(c9)),
        ("synthesis round trip", Box::new(c10)),
        ("four-swap decomposition", Box::new(c11)),
        ("format fixpoints and golden determinism", Box::new(c12)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.1?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{:.1?}]", i + 1, t.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
