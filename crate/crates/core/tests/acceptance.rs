//! Acceptance suite: one test per criterion, every assertion exact.
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! pass/fail line each criterion prints.

use std::collections::BTreeMap;
use std::sync::Arc;

use sumrank::codes::{EnumOpts, LinearCode};
use sumrank::extend::{
    build_lattice, dual_lattice, extended_distance_formula, multiply_extend,
    singleton_lattice_verdict, verify_lattice_identities, ExtensionSpec,
};
use sumrank::field::{Field, FieldTower, FqmElem, TowerRef};
use sumrank::linalg::Matrix;
use sumrank::metrics::{weight, LengthPartition, TailKind, WeightFunction};
use sumrank::moore::{
    check_msrd_conditions, default_field_reduction, doubly_extend, field_reduction_beta,
    moore_code_is_msrd, rank_tail_code, rank_tail_criterion, semilinear_map,
    shifted_moore_code_is_msrd, triple_extension_predicted, triple_one_weight_check,
    triply_extend, union_covers, MooreSpec, RankTail,
};

fn tower(p: u64, e: usize, m: usize) -> TowerRef {
    Arc::new(FieldTower::new(p, e, m).unwrap())
}

fn opts() -> EnumOpts {
    EnumOpts::default()
}

// splitmix64, fixed seeds: the randomized populations are frozen
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

#[test]
fn criterion_01_doubly_extended_reed_solomon_is_mds() {
    // q = 8, m = 1: length-9 double extension of the full Vandermonde code;
    // exhaustive distance equals the Singleton value (n+2) - k + 1 = 10 - k
    // for every dimension
    let t = tower(2, 3, 1);
    for k in 2..=6 {
        let spec = MooreSpec::with_defaults(t.clone(), 7, 1, 1, k).unwrap();
        let code = doubly_extend(&spec).unwrap();
        assert_eq!(code.length(), 9);
        let verdict = code.attains_singleton(&opts()).unwrap();
        assert_eq!(verdict.distance, 10 - k, "k = {k}");
        assert!(verdict.attains, "k = {k}");
    }
    println!("criterion 01: PASS (doubly extended full Vandermonde over F_8 is MDS for k = 2..6)");
}

struct RandomSpec {
    spec: ExtensionSpec,
}

fn random_population(count: usize) -> Vec<RandomSpec> {
    let towers = [tower(2, 1, 2), tower(2, 1, 3)];
    let mut rng = Rng(0xACCE97);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let t = &towers[(out.len() / 2) % 2];
        let field = t.fqm();
        let n = 2 + rng.below(5) as usize; // 2..=6
        let k = 1 + rng.below(n.min(4) as u64) as usize;
        let ext = 1 + rng.below(k.min(2) as u64) as usize;
        let rows = Matrix::from_fn(k, n, |_, _| field.from_index(rng.below(t.qm)));
        if sumrank::linalg::rank(&field, &rows) != k {
            continue;
        }
        let base = if rng.below(2) == 0 {
            WeightFunction::Hamming { len: n }
        } else {
            let divisors: Vec<usize> = (1..=n).filter(|r| n.is_multiple_of(*r)).collect();
            let r = divisors[rng.below(divisors.len() as u64) as usize];
            WeightFunction::SumRank(LengthPartition::new(n / r, r).unwrap())
        };
        let spec = ExtensionSpec::new(t.clone(), rows, ext, base, TailKind::Hamming).unwrap();
        out.push(RandomSpec { spec });
    }
    out
}

#[test]
fn criterion_02_distance_formula_equals_enumeration() {
    let population = random_population(100);
    assert_eq!(population.len(), 100);
    for (i, case) in population.iter().enumerate() {
        let lattice = build_lattice(&case.spec, &opts()).unwrap();
        let formula = extended_distance_formula(&lattice);
        let brute = multiply_extend(&case.spec).min_distance(&opts()).unwrap();
        assert_eq!(formula, brute, "spec #{i}");
    }
    println!("criterion 02: PASS (lattice formula = enumerated distance on 100 random specs)");
}

#[test]
fn criterion_03_lattice_singleton_criterion_both_directions() {
    let population = random_population(100);
    let mut attained = 0;
    for (i, case) in population.iter().enumerate() {
        let lattice = build_lattice(&case.spec, &opts()).unwrap();
        let verdict = singleton_lattice_verdict(&lattice);
        let direct = multiply_extend(&case.spec)
            .attains_singleton(&opts())
            .unwrap()
            .attains;
        assert_eq!(verdict.extended_attains, direct, "spec #{i}");
        if direct {
            attained += 1;
        }
    }
    assert!(attained > 0 && attained < 100, "population must exercise both directions");
    println!(
        "criterion 03: PASS (lattice criterion = direct verdict on 100 random specs, {attained} attaining)"
    );
}

#[test]
fn criterion_04_dual_lattice_identities() {
    let population = random_population(100);
    let mut checked = 0;
    for case in &population {
        if case.spec.t() != 2 {
            continue;
        }
        let lattice = build_lattice(&case.spec, &opts()).unwrap();
        let dual = dual_lattice(&lattice, &opts()).unwrap();
        verify_lattice_identities(&dual).unwrap();
        checked += 1;
    }
    assert!(checked >= 20, "need a substantial t = 2 subpopulation, got {checked}");
    println!("criterion 04: PASS (dual lattice sum/intersection identities on {checked} specs)");
}

#[test]
fn criterion_05_support_conditions_characterize_msrd() {
    let o = opts();
    // (a) q = 2, m = 3, mu = 1, r = 3: conditions hold, every dimension attains
    let t = tower(2, 1, 3);
    for k in 1..=3 {
        let spec = MooreSpec::with_defaults(t.clone(), 1, 1, 3, k).unwrap();
        assert!(check_msrd_conditions(&spec).unwrap().ok);
        assert!(moore_code_is_msrd(&spec, &o).unwrap(), "k = {k}");
        // (c) shifted construction agrees
        assert!(shifted_moore_code_is_msrd(&spec, &o).unwrap(), "k = {k}");
    }
    // (b) repeated support entry violates condition 2 and kills attainment
    let t = tower(2, 1, 2);
    let field = t.fqm();
    let bad = MooreSpec::new(
        t.clone(),
        vec![field.one()],
        vec![field.one(), field.one()],
        2,
        1,
        2,
    )
    .unwrap();
    assert!(!check_msrd_conditions(&bad).unwrap().ok);
    assert!(!moore_code_is_msrd(&bad, &o).unwrap());
    assert!(!shifted_moore_code_is_msrd(&bad, &o).unwrap());
    println!("criterion 05: PASS (conditions <=> attainment, plain and shifted, both directions)");
}

#[test]
fn criterion_06_doubly_extended_codes_attain_the_bound() {
    let o = opts();
    let t = tower(2, 1, 3);
    let spec = MooreSpec::with_defaults(t, 1, 1, 3, 2).unwrap();
    let code = doubly_extend(&spec).unwrap();
    assert_eq!(code.min_distance(&o).unwrap(), 4);
    assert_eq!(code.length() - code.dimension() + 1, 4);

    let t = tower(3, 1, 2);
    let spec = MooreSpec::with_defaults(t, 2, 1, 2, 2).unwrap();
    let code = doubly_extend(&spec).unwrap();
    assert_eq!(code.length(), 6);
    assert_eq!(code.min_distance(&o).unwrap(), 5);
    println!("criterion 06: PASS (doubly extended distances 4 over F_8 and 5 over F_9)");
}

#[test]
fn criterion_07_triple_extension_parity_rule() {
    let o = opts();
    let cases = [
        (2u64, 1usize, 3usize, true),
        (3, 1, 3, false),
        (2, 1, 2, false),
    ];
    for (p, e, m, expected) in cases {
        let t = tower(p, e, m);
        let ell = (t.q - 1) as usize;
        let spec = MooreSpec::with_defaults(t.clone(), ell, 1, m, 3).unwrap();
        let code = triply_extend(&spec).unwrap();
        let verdict = code.attains_singleton(&o).unwrap();
        assert_eq!(verdict.attains, expected, "q = {}, m = {m}", t.q);
        if expected {
            assert_eq!(verdict.distance, 4);
        }
        assert_eq!(triple_extension_predicted(t.q, m), expected);
    }
    println!("criterion 07: PASS (triply extended MSRD exactly for even q, odd m; prediction agrees)");
}

#[test]
fn criterion_08_rank_tail_criterion_equals_brute_force() {
    let o = opts();
    let t = tower(2, 1, 2);
    let field = t.fqm();
    let spec = MooreSpec::with_defaults(t.clone(), 1, 1, 2, 2).unwrap();

    // the pinned instance: identity tail block
    let tail = RankTail {
        a: field.one(),
        b: field.zero(),
        c: field.zero(),
        d: field.one(),
    };
    let report = rank_tail_criterion(&spec, &tail).unwrap();
    assert!(!report.msrd);
    let d = rank_tail_code(&spec, &tail).unwrap().min_distance(&o).unwrap();
    assert!(d < 3);

    // sweep every admissible tail over F_4
    let mut swept = 0;
    for idx in 0..t.qm.pow(4) {
        let digits: Vec<FqmElem> = (0..4)
            .map(|i| field.from_index(idx / t.qm.pow(i) % t.qm))
            .collect();
        let tail = RankTail {
            a: digits[0].clone(),
            b: digits[1].clone(),
            c: digits[2].clone(),
            d: digits[3].clone(),
        };
        let report = match rank_tail_criterion(&spec, &tail) {
            Ok(r) => r,
            Err(sumrank::Error::BadTail(_)) => continue,
            Err(e) => panic!("unexpected error: {e}"),
        };
        let brute = rank_tail_code(&spec, &tail)
            .unwrap()
            .attains_singleton(&o)
            .unwrap()
            .attains;
        assert_eq!(report.msrd, brute, "tail index {idx}");
        assert!(!report.msrd, "a covering support admits no MSRD rank-tail extension");
        swept += 1;
    }
    assert!(swept > 100);
    println!("criterion 08: PASS (rank-tail criterion = brute force on {swept} admissible tails)");
}

#[test]
fn criterion_09_union_coverage_matches_projective_count() {
    let t = tower(2, 1, 4);
    for mu in 1..=5usize {
        let frs = default_field_reduction(&t, mu, 2).unwrap();
        let (_, subspaces) = field_reduction_beta(&frs).unwrap();
        assert_eq!(union_covers(&t, &subspaces).unwrap(), mu == 5, "mu = {mu}");
    }
    println!("criterion 09: PASS (degree-2 subfield lines cover F_16 exactly at mu = 5)");
}

#[test]
fn criterion_10_one_weight_codes() {
    let o = opts();
    // covering support: every nonzero codeword has weight 4
    let t = tower(2, 1, 2);
    let spec = MooreSpec::with_defaults(t.clone(), 1, 3, 1, 2).unwrap();
    let dist = doubly_extend(&spec).unwrap().weight_distribution(&o).unwrap();
    let expected: BTreeMap<usize, u64> = [(0, 1), (4, 15)].into_iter().collect();
    assert_eq!(dist.counts(), &expected);

    // dropping one projective point breaks the one-weight property
    let spec = MooreSpec::with_defaults(t.clone(), 1, 2, 1, 2).unwrap();
    let dist = doubly_extend(&spec).unwrap().weight_distribution(&o).unwrap();
    assert!(dist.counts().keys().filter(|&&w| w > 0).count() >= 2);

    // the triply extended code over F_8 attains its bound but is not
    // one-weight: minimum 4 = n + 1 and a full-weight codeword exists
    let t = tower(2, 1, 3);
    let spec = MooreSpec::with_defaults(t.clone(), 1, 1, 3, 3).unwrap();
    let code = triply_extend(&spec).unwrap();
    let dist = code.weight_distribution(&o).unwrap();
    assert_eq!(dist.min_nonzero(), Some(4));
    assert!(code.attains_singleton(&o).unwrap().attains);
    let report = triple_one_weight_check(&spec, &o).unwrap();
    assert!(!report.one_weight);
    assert_eq!(report.heavy_weight, 6);
    assert_eq!(dist.max_weight(), Some(6));
    println!("criterion 10: PASS (one-weight iff covering support; triple extension is never one-weight)");
}

// --- criterion 11: exhaustive property suites over every tower with q^m <= 64 ---

fn small_towers() -> Vec<TowerRef> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
        for e in 1..=6 {
            for m in 1..=6 {
                match (p as u128).checked_pow((e * m) as u32) {
                    Some(size) if size <= 64 => out.push(tower(p, e, m)),
                    _ => {}
                }
            }
        }
    }
    out
}

/// Index-level operation tables so triple scans stay cheap.
struct Tables {
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl Tables {
    fn build(t: &TowerRef) -> Tables {
        let field = t.fqm();
        let size = t.qm as usize;
        let elems: Vec<FqmElem> = (0..t.qm).map(|i| field.from_index(i)).collect();
        let mut add = vec![0u16; size * size];
        let mut mul = vec![0u16; size * size];
        for i in 0..size {
            for j in 0..size {
                add[i * size + j] = field.index(&field.add(&elems[i], &elems[j])) as u16;
                mul[i * size + j] = field.index(&field.mul(&elems[i], &elems[j])) as u16;
            }
        }
        Tables { size, add, mul }
    }

    fn a(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size + y] as usize
    }

    fn m(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y] as usize
    }
}

#[test]
fn criterion_11_property_suites_exhaustive() {
    let towers = small_towers();
    assert!(towers.len() >= 30);
    for t in &towers {
        let field = t.fqm();
        let fq = t.fq();
        let n = t.qm as usize;
        let tb = Tables::build(t);

        // field axioms on all triples
        for x in 0..n {
            for y in 0..n {
                assert_eq!(tb.a(x, y), tb.a(y, x));
                assert_eq!(tb.m(x, y), tb.m(y, x));
                for z in 0..n {
                    assert_eq!(tb.a(tb.a(x, y), z), tb.a(x, tb.a(y, z)));
                    assert_eq!(tb.m(tb.m(x, y), z), tb.m(x, tb.m(y, z)));
                    assert_eq!(tb.m(x, tb.a(y, z)), tb.a(tb.m(x, y), tb.m(x, z)));
                }
            }
        }

        let elems: Vec<FqmElem> = (0..t.qm).map(|i| field.from_index(i)).collect();
        // inverses
        for x in &elems[1..] {
            assert_eq!(field.mul(x, &field.inv(x).unwrap()), field.one());
        }

        // the q-power map is a ring homomorphism
        for x in &elems {
            for y in &elems {
                let fx = t.frobenius(x, 1);
                let fy = t.frobenius(y, 1);
                assert_eq!(t.frobenius(&field.add(x, y), 1), field.add(&fx, &fy));
                assert_eq!(t.frobenius(&field.mul(x, y), 1), field.mul(&fx, &fy));
            }
        }

        // the fixed field of the q-power map is exactly the embedded F_q
        for x in &elems {
            let fixed = t.frobenius(x, 1) == *x;
            let in_base = t
                .as_base(x)
                .is_some();
            assert_eq!(fixed, in_base);
        }

        // norm: multiplicative, surjective onto F_q^*
        for x in &elems {
            for y in &elems {
                assert_eq!(
                    t.norm(&field.mul(x, y)),
                    fq.mul(&t.norm(x), &t.norm(y))
                );
            }
        }
        let norm_image: std::collections::HashSet<u64> =
            elems[1..].iter().map(|x| fq.index(&t.norm(x))).collect();
        let base_units: std::collections::HashSet<u64> = (1..t.q).collect();
        assert_eq!(norm_image, base_units);

        // norm-one elements are exactly the (q-1)-th powers
        let norm_one: std::collections::HashSet<u64> = elems[1..]
            .iter()
            .filter(|x| t.norm(x) == fq.one())
            .map(|x| field.index(x))
            .collect();
        let power_image: std::collections::HashSet<u64> = elems[1..]
            .iter()
            .map(|x| field.index(&field.pow(x, t.q - 1)))
            .collect();
        assert_eq!(norm_one, power_image);
    }

    // weight axioms, exhaustive over F_4^3
    let t = tower(2, 1, 2);
    let field = t.fqm();
    let vectors: Vec<Vec<FqmElem>> = (0..t.qm.pow(3))
        .map(|mut idx| {
            (0..3)
                .map(|_| {
                    let x = field.from_index(idx % t.qm);
                    idx /= t.qm;
                    x
                })
                .collect()
        })
        .collect();
    for w in [
        WeightFunction::Hamming { len: 3 },
        WeightFunction::Rank { len: 3 },
        WeightFunction::SumRank(LengthPartition::new(3, 1).unwrap()),
        WeightFunction::SumRank(LengthPartition::new(1, 3).unwrap()),
    ] {
        for v in &vectors {
            let wv = weight(&t, &w, v).unwrap();
            assert_eq!(wv == 0, v.iter().all(|x| field.is_zero(x)));
            for l in 1..t.qm {
                let lambda = field.from_index(l);
                let scaled: Vec<FqmElem> = v.iter().map(|x| field.mul(&lambda, x)).collect();
                assert_eq!(weight(&t, &w, &scaled).unwrap(), wv);
            }
        }
        for a in &vectors {
            for b in &vectors {
                let sum: Vec<FqmElem> =
                    a.iter().zip(b.iter()).map(|(x, y)| field.add(x, y)).collect();
                assert!(
                    weight(&t, &w, &sum).unwrap()
                        <= weight(&t, &w, a).unwrap() + weight(&t, &w, b).unwrap()
                );
            }
        }
    }

    // the block map x -> x^q * a_b preserves sum-rank weight, exhaustively
    let spec = MooreSpec::new(
        t.clone(),
        vec![field.from_index(2)],
        vec![field.one(), field.from_index(2)],
        1,
        2,
        1,
    )
    .unwrap();
    let w = spec.sum_rank_weight();
    for i in 0..t.qm {
        for j in 0..t.qm {
            let v = vec![field.from_index(i), field.from_index(j)];
            let img = semilinear_map(&spec, &v).unwrap();
            assert_eq!(weight(&t, &w, &v).unwrap(), weight(&t, &w, &img).unwrap());
        }
    }

    // a sum-rank code and its image under the block map share a weight
    // distribution
    let t8 = tower(2, 1, 3);
    let spec8 = MooreSpec::with_defaults(t8.clone(), 1, 1, 3, 2).unwrap();
    let code = sumrank::moore::moore_code(&spec8).unwrap();
    let mapped_rows: Vec<Vec<FqmElem>> = (0..2)
        .map(|i| semilinear_map(&spec8, code.generator().row(i)).unwrap())
        .collect();
    let mapped = LinearCode::new(
        t8.clone(),
        Matrix::from_rows(mapped_rows).unwrap(),
        code.weight_fn().clone(),
    )
    .unwrap();
    assert_eq!(
        code.weight_distribution(&opts()).unwrap(),
        mapped.weight_distribution(&opts()).unwrap()
    );

    println!(
        "criterion 11: PASS (field axioms, norm laws, fixed fields and weight axioms over {} towers)",
        towers.len()
    );
}
