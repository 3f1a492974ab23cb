//! The acceptance suite: fourteen numbered checks, each reported as one
//! pass/fail line. Shared by `cgx verify-all` and the `acceptance` test
//! target.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cgh::Cgh;
use crate::config::{classify_pair, is_free, ConfigSet, ConfigType};
use crate::constructions::{
    d2_fano7, delta, h_prime, h_star, s2_split, Design, Family, FamilySpec,
};
use crate::formula::Formula;
use crate::geometry::{oracle_classify, ConvexRealization, DEFAULT_RADIUS};
use crate::search::{
    brute_force_mis, enumerate_extremal, ex_number, max_independent_set, ConflictGraph, Graph,
    SearchOptions,
};
use crate::symmetry::canonical_form;
use crate::tournament::{
    count_directed_triangles, max_triangle_tournament, triangles_by_formula, verify_d1_bound,
    Tournament,
};
use crate::triple::Triple;

use ConfigType::*;

const SEED: u64 = 0x5eed_c6c6;

/// Largest `n` the solver-backed criteria use unless told otherwise.
pub const DEFAULT_MAX_N: usize = 9;

/// Below this some criteria have no instances left to check.
pub const MIN_MAX_N: usize = 7;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Suite parameters.
#[derive(Debug, Clone)]
pub struct Suite {
    max_n: usize,
    opts: SearchOptions,
}

impl Default for Suite {
    fn default() -> Self {
        Suite {
            max_n: DEFAULT_MAX_N,
            opts: SearchOptions::from_env().with_budget(None),
        }
    }
}

type Check = fn(&Suite) -> Result<String, String>;

const CRITERIA: [(&str, Check); 14] = [
    ("classifier matches geometric oracle", c01_classifier_oracle),
    ("delta values and h_star sizes", c02_delta),
    (
        "constructions have closed-form size and are free",
        c03_constructions,
    ),
    ("ex(n,{M1,S1,D1}) = delta", c04_m1s1d1),
    ("ex(n,M1) = delta + n(n-3)/2", c05_m1),
    ("ex(n,{M1,S1}) = delta + floor(n/2)floor((n-2)/2)", c06_m1s1),
    ("ex(n,M3) = C(n,3) - C(n-3,3)", c07_m3),
    ("ex(n,M2) = C(n,2) - 2", c08_m2),
    ("ex(n,S3) = n(n-2)/2", c09_s3),
    ("ex(n,D1) = delta", c10_d1),
    ("conjecture probes for S2, S1, D2", c11_probes),
    ("extremal uniqueness spot checks", c12_uniqueness),
    ("tournament suite", c13_tournaments),
    ("solver matches brute force", c14_solver_oracle),
];

impl Suite {
    /// `max_n` bounds the `n` ranges of the solver-backed criteria. Ranges
    /// whose values come from a closed form extend up to it; the others are
    /// clipped to it. Values below [`MIN_MAX_N`] are raised to it.
    pub fn new(max_n: usize, opts: SearchOptions) -> Self {
        Suite {
            max_n: max_n.max(MIN_MAX_N),
            opts,
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn criterion_count() -> usize {
        CRITERIA.len()
    }

    /// Runs one criterion (1-based id).
    pub fn run_one(&self, id: usize) -> Option<Outcome> {
        let (title, check) = *CRITERIA.get(id.checked_sub(1)?)?;
        let start = Instant::now();
        let result = check(self);
        Some(Outcome {
            id,
            title,
            passed: result.is_ok(),
            detail: result.unwrap_or_else(|e| e),
            elapsed: start.elapsed(),
        })
    }

    /// Runs every criterion in order, handing each outcome to `report` as
    /// soon as it is known.
    pub fn run(&self, mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
        (1..=CRITERIA.len())
            .map(|id| {
                let o = self.run_one(id).expect("id in range");
                report(&o);
                o
            })
            .collect()
    }

    fn range(&self, lo: usize, hi: usize) -> std::ops::RangeInclusive<usize> {
        lo..=hi.min(self.max_n)
    }

    /// `lo..=max_n`, for criteria whose expected values come from a closed
    /// form.
    fn open_range(&self, lo: usize) -> std::ops::RangeInclusive<usize> {
        lo..=self.max_n
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Checks `ex(n, forbidden)` against `formula` over `ns`, also checking the
/// formula against the listed values where they are given (one per `n`,
/// starting at the first `n`).
fn solver_matches(
    suite: &Suite,
    forbidden: ConfigSet,
    formula: Formula,
    ns: impl IntoIterator<Item = usize>,
    listed: &[usize],
) -> Result<String, String> {
    let mut got = Vec::new();
    for (i, n) in ns.into_iter().enumerate() {
        let expected = formula.eval(n);
        if let Some(&v) = listed.get(i) {
            ensure(v == expected, || {
                format!("closed form gives {expected} at n = {n}, listed {v}")
            })?;
        }
        let r = ex_number(n, forbidden, &suite.opts).map_err(err)?;
        ensure(r.is_optimal(), || format!("n = {n}: search did not finish"))?;
        ensure(r.best_size == expected, || {
            format!("n = {n}: solver {} != expected {expected}", r.best_size)
        })?;
        got.push(format!("{n}:{}", r.best_size));
    }
    ensure(!got.is_empty(), || "empty range".into())?;
    Ok(got.join(" "))
}

fn c01_classifier_oracle(suite: &Suite) -> Result<String, String> {
    let mut pairs = 0usize;
    for n in suite.open_range(4) {
        let rz = ConvexRealization::realize(n, DEFAULT_RADIUS).map_err(err)?;
        let triples: Vec<Triple> = Triple::all(n).collect();
        let mismatches: Vec<String> = (0..triples.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let (rz, triples) = (&rz, &triples);
                (i + 1..triples.len()).filter_map(move |j| {
                    let (s, t) = (&triples[i], &triples[j]);
                    let comb = classify_pair(n, s, t).ok();
                    let geo = oracle_classify(rz, s, t).ok();
                    (comb.is_none() || comb != geo)
                        .then(|| format!("n = {n}, {s} vs {t}: {comb:?} / {geo:?}"))
                })
            })
            .collect();
        if let Some(m) = mismatches.first() {
            return Err(format!("{} mismatches, first {m}", mismatches.len()));
        }
        pairs += triples.len() * (triples.len() - 1) / 2;
    }
    Ok(format!("{pairs} pairs, n = 4..{}", suite.max_n))
}

fn bit_patterns(len: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << len).map(move |m| (0..len).map(|i| m >> i & 1 == 1).collect())
}

fn c02_delta(_: &Suite) -> Result<String, String> {
    let listed = [1, 2, 5, 8, 14, 20, 30, 40, 55];
    let got: Vec<usize> = (3..=11).map(delta).collect();
    ensure(got == listed, || format!("delta(3..11) = {got:?}"))?;
    let mut checked = 0;
    for n in [4, 6, 8] {
        for bits in bit_patterns(n / 2) {
            let h = h_star(n, Some(&bits)).map_err(err)?;
            ensure(h.len() == delta(n), || {
                format!(
                    "h_star({n}, {bits:?}) has {} triples, expected {}",
                    h.len(),
                    delta(n)
                )
            })?;
            ensure(is_free(&h, Family::HStar.forbidden()), || {
                format!("h_star({n}, {bits:?}) is not {{M1,S1,D1}}-free")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "delta(3..11) = {got:?}; {checked} side-bit choices"
    ))
}

fn zigzag_diagonals(n: usize) -> Vec<(usize, usize)> {
    let mut order = vec![0];
    let (mut lo, mut hi) = (1, n - 1);
    while lo <= hi {
        order.push(lo);
        if lo != hi {
            order.push(hi);
        }
        lo += 1;
        hi -= 1;
    }
    (1..n.saturating_sub(2))
        .map(|i| (order[i], order[i + 1]))
        .collect()
}

/// `AG(2,7)` on 49 points, as an `S(49,7,2)` design.
fn affine_plane_7() -> Design {
    let q = 7;
    let pt = |x: usize, y: usize| x * q + y;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for m in 0..q {
        for b in 0..q {
            blocks.push((0..q).map(|x| pt(x, (m * x + b) % q)).collect());
        }
    }
    for c in 0..q {
        blocks.push((0..q).map(|y| pt(c, y)).collect());
    }
    Design { n: q * q, blocks }
}

fn construction_specs() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for n in 3..=12 {
        for family in Family::ALL {
            if !family.supports(n) {
                continue;
            }
            let base = FamilySpec::new(family, n);
            match family {
                Family::HStar if n % 2 == 0 => {
                    let k = n / 2;
                    for bits in [
                        vec![false; k],
                        vec![true; k],
                        (0..k).map(|i| i % 2 == 1).collect(),
                    ] {
                        specs.push(base.clone().with_side_bits(bits));
                    }
                }
                Family::HPlus if n % 2 == 1 => {
                    specs.extend((0..n).map(|s| base.clone().with_start(s)));
                }
                Family::M3x => {
                    let admissible: Vec<usize> = (1..n).filter(|k| 2 * k + 4 < n).collect();
                    specs.push(base.clone());
                    specs.extend(admissible.iter().map(|&k| base.clone().with_swaps(vec![k])));
                    if admissible.len() > 1 {
                        specs.push(base.clone().with_swaps(admissible));
                    }
                }
                Family::D2Tri => {
                    let fan = (2..n - 1).map(|i| (0, i)).collect();
                    specs.push(base.clone().with_diagonals(fan));
                    if n >= 5 {
                        specs.push(base.clone().with_diagonals(zigzag_diagonals(n)));
                    }
                }
                Family::D2Design => {
                    if n == 7 {
                        let trivial = Design {
                            n: 7,
                            blocks: vec![(0..7).collect()],
                        };
                        specs.push(base.clone().with_design(trivial));
                    }
                }
                _ => specs.push(base),
            }
        }
    }
    specs.push(FamilySpec::new(Family::D2Design, 49).with_design(affine_plane_7()));
    specs
}

fn c03_constructions(_: &Suite) -> Result<String, String> {
    let specs = construction_specs();
    let failures: Vec<String> = specs
        .par_iter()
        .filter_map(|spec| {
            let label = format!("{} n = {}", spec.family, spec.n);
            match spec.generate() {
                Err(e) => Some(format!("{label}: {e}")),
                Ok(h) if h.len() != spec.expected_size() => Some(format!(
                    "{label}: size {} != {}",
                    h.len(),
                    spec.expected_size()
                )),
                Ok(h) if !is_free(&h, spec.family.forbidden()) => {
                    Some(format!("{label}: not {}-free", spec.family.forbidden()))
                }
                Ok(_) => None,
            }
        })
        .collect();
    match failures.first() {
        Some(f) => Err(format!("{} failures, first {f}", failures.len())),
        None => Ok(format!(
            "{} parameterized families, n <= 12 plus AG(2,7)",
            specs.len()
        )),
    }
}

fn c04_m1s1d1(s: &Suite) -> Result<String, String> {
    solver_matches(
        s,
        ConfigSet::of(&[M1, S1, D1]),
        Formula::Delta,
        s.open_range(5),
        &[5, 8, 14, 20, 30],
    )
}

fn c05_m1(s: &Suite) -> Result<String, String> {
    solver_matches(
        s,
        ConfigSet::single(M1),
        Formula::M1,
        s.open_range(6),
        &[17, 28, 40, 57],
    )
}

fn c06_m1s1(s: &Suite) -> Result<String, String> {
    solver_matches(
        s,
        ConfigSet::of(&[M1, S1]),
        Formula::M1S1,
        s.open_range(6),
        &[14, 20, 32, 42],
    )
}

fn c07_m3(s: &Suite) -> Result<String, String> {
    solver_matches(
        s,
        ConfigSet::single(M3),
        Formula::M3,
        s.open_range(4),
        &[4, 10, 19, 31, 46, 64],
    )
}

fn c08_m2(s: &Suite) -> Result<String, String> {
    let main = solver_matches(
        s,
        ConfigSet::single(M2),
        Formula::M2,
        s.open_range(7),
        &[19, 26, 34],
    )?;
    let r = ex_number(6, ConfigSet::single(M2), &s.opts).map_err(err)?;
    ensure(r.best_size >= 14, || {
        format!("ex(6,M2) = {} < 14", r.best_size)
    })?;
    Ok(format!(
        "{main}; ex(6,M2) = {} ({:?})",
        r.best_size, r.status
    ))
}

fn c09_s3(s: &Suite) -> Result<String, String> {
    let evens: Vec<usize> = s.open_range(4).filter(|n| n % 2 == 0).collect();
    solver_matches(s, ConfigSet::single(S3), Formula::S3, evens, &[4, 12, 24])
}

fn c10_d1(s: &Suite) -> Result<String, String> {
    solver_matches(
        s,
        ConfigSet::single(D1),
        Formula::Delta,
        s.open_range(4),
        &[2, 5, 8, 14, 20, 30],
    )
}

fn c11_probes(s: &Suite) -> Result<String, String> {
    let mut s2 = Vec::new();
    let mut below = Vec::new();
    for n in s.open_range(5) {
        let witness = s2_split(n).map_err(err)?;
        let bound = Formula::S2.eval(n);
        ensure(
            witness.len() == bound && is_free(&witness, ConfigSet::single(S2)),
            || format!("s2_split({n}) is not an S2-free family of size {bound}"),
        )?;
        let r = ex_number(n, ConfigSet::single(S2), &s.opts).map_err(err)?;
        ensure(r.best_size >= bound, || {
            format!("ex({n},S2) = {} < {bound}", r.best_size)
        })?;
        if r.best_size != bound {
            below.push(n);
        }
        s2.push(format!("{n}:{}/{bound}", r.best_size));
    }
    let mut s1 = Vec::new();
    for n in s.range(5, 8) {
        let lo = Formula::M1S1.eval(n);
        let hi = delta(n) + n * n;
        let r = ex_number(n, ConfigSet::single(S1), &s.opts).map_err(err)?;
        ensure((lo..=hi).contains(&r.best_size), || {
            format!("ex({n},S1) = {} outside [{lo}, {hi}]", r.best_size)
        })?;
        s1.push(format!("{n}:{}", r.best_size));
    }
    let fano = d2_fano7().map_err(err)?;
    ensure(
        fano.len() == 8 && is_free(&fano, ConfigSet::single(D2)),
        || "Fano witness is not a D2-free family of size 8".into(),
    )?;
    let r = ex_number(7, ConfigSet::single(D2), &s.opts).map_err(err)?;
    ensure(r.best_size >= 8, || {
        format!("ex(7,D2) = {} < 8", r.best_size)
    })?;
    let d2 = format!("ex(7,D2) = {}, Fano witness 8", r.best_size);
    let verdict = if below.is_empty() {
        "conjecture matches".to_string()
    } else {
        format!("conjecture exceeded at n = {below:?}")
    };
    Ok(format!(
        "S2 {} ({verdict}); S1 {}; {d2}",
        s2.join(" "),
        s1.join(" ")
    ))
}

fn c12_uniqueness(s: &Suite) -> Result<String, String> {
    let forbidden = Family::HStar.forbidden();
    let mut notes = Vec::new();
    for n in [5, 7] {
        let e = enumerate_extremal(n, forbidden, 1000, false, &s.opts).map_err(err)?;
        let expected = vec![h_star(n, None).map_err(err)?];
        ensure(!e.truncated && e.families == expected, || {
            format!(
                "n = {n}: {} extremal families, expected only h_star",
                e.families.len()
            )
        })?;
        notes.push(format!("{{M1,S1,D1}} n = {n}: 1 family"));
    }
    let e = enumerate_extremal(7, ConfigSet::single(M1), 1000, true, &s.opts).map_err(err)?;
    let target = canonical_form(&h_prime(7).map_err(err)?);
    ensure(!e.truncated && e.families == vec![target], || {
        format!("M1 n = 7: {} orbits of size {}", e.families.len(), e.size)
    })?;
    notes.push(format!("M1 n = 7: 1 orbit of size {}", e.size));
    Ok(notes.join("; "))
}

fn random_tournament(rng: &mut ChaCha8Rng, n: usize) -> Tournament {
    let mut t = Tournament::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = if rng.gen() { (u, v) } else { (v, u) };
            t.add_arc(a, b).expect("fresh pair");
        }
    }
    t
}

fn random_d1_free(rng: &mut ChaCha8Rng, n: usize) -> Cgh {
    let mut order: Vec<Triple> = Triple::all(n).collect();
    order.shuffle(rng);
    let mut chosen: Vec<Triple> = Vec::new();
    for t in order {
        if chosen
            .iter()
            .all(|s| classify_pair(n, s, &t).map(|c| c != D1).unwrap_or(false))
        {
            chosen.push(t);
        }
    }
    Cgh::collect(n, chosen).expect("valid triples")
}

fn c13_tournaments(_: &Suite) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for round in 0..500 {
        let n = rng.gen_range(3..=8);
        let t = random_tournament(&mut rng, n);
        let formula = triangles_by_formula(&t.out_degrees()).map_err(err)?;
        let brute = count_directed_triangles(&t).map_err(err)?;
        ensure(formula == brute, || {
            format!("random tournament {round} (n = {n}): formula {formula}, count {brute}")
        })?;
    }
    for n in 3..=16 {
        let t = max_triangle_tournament(n).map_err(err)?;
        let c = count_directed_triangles(&t).map_err(err)?;
        ensure(c == delta(n), || {
            format!("max_triangle_tournament({n}) has {c} triangles")
        })?;
    }
    let mut families = Vec::new();
    for n in 4..=9 {
        if n % 2 == 1 {
            families.push(h_star(n, None).map_err(err)?);
        } else {
            for bits in bit_patterns(n / 2) {
                families.push(h_star(n, Some(&bits)).map_err(err)?);
            }
        }
    }
    let star_count = families.len();
    let mut greedy_sizes = BTreeSet::new();
    for _ in 0..100 {
        let h = random_d1_free(&mut rng, 8);
        greedy_sizes.insert(h.len());
        families.push(h);
    }
    for h in &families {
        let r = verify_d1_bound(h).map_err(err)?;
        ensure(r.bound_holds, || {
            format!(
                "n = {}: |H| = {}, triangles {}, delta {}",
                h.n(),
                r.size,
                r.triangles,
                r.delta
            )
        })?;
    }
    Ok(format!(
        "500 random tournaments; n = 3..16 extremal; {star_count} h_star and 100 greedy families (sizes {:?})",
        greedy_sizes
    ))
}

fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let v = rng.gen_range(1..=16);
    let p: f64 = rng.gen_range(0.05..0.9);
    let mut g = Graph::new(v);
    for a in 0..v {
        for b in a + 1..v {
            if rng.gen_bool(p) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

fn mis_agrees(g: &Graph, opts: &SearchOptions, label: &str) -> Result<(), String> {
    let brute = brute_force_mis(g).map_err(err)?;
    for o in [opts.clone(), SearchOptions::sequential()] {
        let r = max_independent_set(g, &o).map_err(err)?;
        ensure(
            r.is_optimal() && r.size == brute && r.vertices.len() == brute,
            || format!("{label}: solver {} vs brute force {brute}", r.size),
        )?;
        ensure(g.is_independent(&r.vertices), || {
            format!("{label}: witness not independent")
        })?;
    }
    Ok(())
}

fn c14_solver_oracle(s: &Suite) -> Result<String, String> {
    let mut sets: Vec<ConfigSet> = ConfigType::ALL
        .iter()
        .map(|&c| ConfigSet::single(c))
        .collect();
    sets.push(ConfigSet::of(&[M1, S1, D1]));
    let mut count = 0;
    for n in [5, 6] {
        for &f in &sets {
            let cg = ConflictGraph::build(n, f).map_err(err)?;
            mis_agrees(cg.graph(), &s.opts, &format!("n = {n}, {f}"))?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 14);
    for i in 0..200 {
        mis_agrees(
            &random_graph(&mut rng),
            &s.opts,
            &format!("random graph {i}"),
        )?;
    }
    Ok(format!("{count} conflict graphs, 200 random graphs"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::d2_expand_design;

    #[test]
    fn zigzag_is_a_triangulation() {
        for n in 4..=12 {
            let d = zigzag_diagonals(n);
            assert!(
                crate::constructions::validate_triangulation(n, &d).is_ok(),
                "n = {n}: {d:?}"
            );
        }
    }

    #[test]
    fn affine_plane_is_a_design() {
        let d = affine_plane_7();
        assert_eq!(d.blocks.len(), 56);
        assert!(d.validate().is_ok());
        assert_eq!(d2_expand_design(&d).unwrap().cgh.len(), 448);
    }

    #[test]
    fn outcome_line_format() {
        let o = Suite::new(5, SearchOptions::sequential())
            .run_one(2)
            .unwrap();
        assert!(o.passed, "{o}");
        assert!(o.to_string().starts_with("[PASS]  2 delta values"));
        assert!(Suite::default().run_one(15).is_none());
    }
}
