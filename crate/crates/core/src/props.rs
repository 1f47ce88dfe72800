//! Randomized and exhaustive checks of the monoid axioms.
//!
//! Every check is a predicate over a fixed-arity tuple of raw values. A
//! sampler biases tuples towards the premise of the check (upper bounds
//! that really are upper bounds, and so on); a failing tuple is returned as
//! the counterexample and re-fails when replayed through [`replay`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::monoid::{mge_tuple, Descriptor, Element, Monoid, Value};
use crate::word::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    pub max_word_len: usize,
    pub max_numerator: u32,
    pub max_denominator: u32,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 1,
            count: 1000,
            max_word_len: 4,
            max_numerator: 6,
            max_denominator: 4,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 || self.max_word_len == 0 || self.max_numerator == 0 || self.max_denominator == 0 {
            return Err(Error::InvalidParameter("sample count and bounds must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Lc,
    Rc,
    Rmge,
    Lsl,
    Gclf,
    Assoc,
    Unit,
    MgeSound,
    EqPartition,
    InfDistrib,
    LpProbe,
}

impl Axiom {
    pub const ALL: [Axiom; 11] = [
        Axiom::Lc,
        Axiom::Rc,
        Axiom::Rmge,
        Axiom::Lsl,
        Axiom::Gclf,
        Axiom::Assoc,
        Axiom::Unit,
        Axiom::MgeSound,
        Axiom::EqPartition,
        Axiom::InfDistrib,
        Axiom::LpProbe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Lc => "LC",
            Axiom::Rc => "RC",
            Axiom::Rmge => "RMGE",
            Axiom::Lsl => "LSL",
            Axiom::Gclf => "GCLF",
            Axiom::Assoc => "ASSOC",
            Axiom::Unit => "UNIT",
            Axiom::MgeSound => "MGE_SOUND",
            Axiom::EqPartition => "EQ_PARTITION",
            Axiom::InfDistrib => "INF_DISTRIB",
            Axiom::LpProbe => "LP_PROBE",
        }
    }

    /// Number of values a check consumes.
    pub fn arity(self) -> usize {
        match self {
            Axiom::Unit => 1,
            Axiom::Lc | Axiom::Rc | Axiom::Rmge | Axiom::Lsl | Axiom::Gclf | Axiom::Assoc | Axiom::LpProbe => 3,
            Axiom::MgeSound | Axiom::InfDistrib => 4,
            Axiom::EqPartition => 5,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown axiom `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub passed: bool,
    /// Trials run; on failure, the index of the failing trial plus one.
    pub trials: usize,
    pub counterexample: Option<Vec<Element>>,
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "fail" };
        write!(f, "{} {verdict} {}", self.axiom, self.trials)?;
        for e in self.counterexample.iter().flatten() {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

/// Outcome of probing the limit-prefix property on a finite sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeReport {
    /// `u a_{n+1} = v a_n` for all sampled `n`; records the conclusions the axiom demands.
    Consistent { u_le_v: bool, unit_le_all: bool },
    NotAnEqualisingSequence { index: usize },
}

impl ProbeReport {
    /// Bounded evidence agrees with the limit-prefix axiom.
    pub fn agrees(&self) -> bool {
        match self {
            ProbeReport::Consistent { u_le_v, unit_le_all } => *u_le_v && *unit_le_all,
            ProbeReport::NotAnEqualisingSequence { .. } => true,
        }
    }
}

/// Checks `u a_{n+1} = v a_n` for `n < N` on the sequence `a_0..a_N`.
pub fn lp_probe(u: &Element, v: &Element, seq: &[Element]) -> Result<ProbeReport> {
    if seq.len() < 2 {
        return Err(Error::InvalidParameter("a probe needs at least two sequence terms".into()));
    }
    for n in 0..seq.len() - 1 {
        if u.op(&seq[n + 1])? != v.op(&seq[n])? {
            return Ok(ProbeReport::NotAnEqualisingSequence { index: n });
        }
    }
    let unit = u.monoid().unit();
    let mut unit_le_all = true;
    for a in seq {
        unit_le_all &= unit.le(a)?;
    }
    Ok(ProbeReport::Consistent {
        u_le_v: u.le(v)?,
        unit_le_all,
    })
}

/// Does the check for `axiom` hold on `args`? Replays counterexamples.
pub fn replay(axiom: Axiom, args: &[Element]) -> Result<bool> {
    if args.len() != axiom.arity() {
        return Err(Error::InvalidParameter(format!(
            "{axiom} takes {} values, got {}",
            axiom.arity(),
            args.len()
        )));
    }
    for w in args.windows(2) {
        w[0].monoid().check(w[1].monoid())?;
    }
    let values: Vec<Value> = args.iter().map(|e| e.value().clone()).collect();
    Ok(holds(axiom, args[0].monoid(), &values))
}

fn holds(axiom: Axiom, monoid: &Monoid, x: &[Value]) -> bool {
    let d = monoid.descriptor();
    match axiom {
        Axiom::Lc => {
            let (a, b, c) = (&x[0], &x[1], &x[2]);
            let ca = c.combine(a);
            (ca != c.combine(b) || a == b) && ca.left_quotient(c).as_ref() == Some(a)
        }
        Axiom::Rc => {
            let (a, b, c) = (&x[0], &x[1], &x[2]);
            a.combine(c) != b.combine(c) || a == b
        }
        Axiom::Rmge => {
            let (a, b, m) = (&x[0], &x[1], &x[2]);
            let bounded = a.le(m) && b.le(m);
            match a.join(b) {
                None => !bounded,
                Some(j) => {
                    let sound = a.le(&j) && b.le(&j);
                    // join as the infimum of sampled upper bounds
                    let least = !bounded || {
                        let g = j.meet(m);
                        j.le(m) && g.le(&j) && j.le(&g) && a.le(&g) && b.le(&g)
                    };
                    sound && least
                }
            }
        }
        Axiom::Lsl => {
            let (a, b, l) = (&x[0], &x[1], &x[2]);
            let g = a.meet(b);
            g.le(a) && g.le(b) && (!(l.le(a) && l.le(b)) || l.le(&g))
        }
        Axiom::Gclf => {
            let (m, xx, t) = (&x[0], &x[1], &x[2]);
            let v = m.combine(t);
            !m.le(&xx.combine(&v)) || m.le(&xx.combine(m))
        }
        Axiom::Assoc => {
            let (a, b, c) = (&x[0], &x[1], &x[2]);
            a.combine(b).combine(c) == a.combine(&b.combine(c))
        }
        Axiom::Unit => {
            let e = Value::unit(d);
            e.combine(&x[0]) == x[0] && x[0].combine(&e) == x[0]
        }
        Axiom::MgeSound => {
            let (a, b, xx, y) = (&x[0], &x[1], &x[2], &x[3]);
            if a.combine(xx) != b.combine(y) {
                return true;
            }
            let pair = [monoid.wrap(a.clone()), monoid.wrap(b.clone())];
            let Ok(Some(mge)) = mge_tuple(&pair) else {
                return false;
            };
            let (c, dd) = (mge[0].value(), mge[1].value());
            match (xx.left_quotient(c), y.left_quotient(dd)) {
                (Some(p), Some(q)) => p == q && a.combine(c) == b.combine(dd),
                _ => false,
            }
        }
        Axiom::EqPartition => {
            let (a, b, c, dd, r) = (&x[0], &x[1], &x[2], &x[3], &x[4]);
            let mge = |p: &Value, q: &Value| -> Option<(Value, Value)> {
                let j = p.join(q)?;
                Some((j.left_quotient(p)?, j.left_quotient(q)?))
            };
            let equalises = |p: &Value, q: &Value, (s, t): &(Value, Value)| {
                p.combine(&s.combine(r)) == q.combine(&t.combine(r))
            };
            let (e1, e2) = (mge(a, b), mge(c, dd));
            match (&e1, &e2) {
                (Some(e1), Some(e2)) => {
                    let shared = equalises(c, dd, e1) || equalises(a, b, e2);
                    !shared || (equalises(c, dd, e1) && equalises(a, b, e2))
                }
                // a pair without equalisers shares none
                _ => true,
            }
        }
        Axiom::InfDistrib => {
            let (v, s) = (&x[0], &x[1..]);
            let mut lhs = v.combine(&s[0]);
            let mut inf = s[0].clone();
            for si in &s[1..] {
                lhs.meet_assign(&v.combine(si));
                inf.meet_assign(si);
            }
            let rhs = v.combine(&inf);
            lhs.le(&rhs) && rhs.le(&lhs)
        }
        Axiom::LpProbe => {
            let (u, t, a0) = (&x[0], &x[1], &x[2]);
            let v = u.combine(t);
            let mut seq = vec![monoid.wrap(a0.clone())];
            for n in 0..LP_PROBE_LEN {
                let next = t.combine(seq[n].value());
                seq.push(monoid.wrap(next));
            }
            matches!(
                lp_probe(&monoid.wrap(u.clone()), &monoid.wrap(v), &seq),
                Ok(ProbeReport::Consistent { u_le_v: true, unit_le_all: true })
            )
        }
    }
}

const LP_PROBE_LEN: usize = 5;

fn random_value(d: &Descriptor, cfg: &SampleConfig, rng: &mut ChaCha8Rng) -> Value {
    match d {
        Descriptor::Free(sigma) => {
            let len = rng.gen_range(0..=cfg.max_word_len);
            let letters = sigma.letters();
            Value::Word(Word::from_letters(
                (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect::<Vec<_>>(),
            ))
        }
        Descriptor::Tropical => {
            let p = rng.gen_range(0..=cfg.max_numerator);
            let q = rng.gen_range(1..=cfg.max_denominator);
            Value::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
        }
        Descriptor::IntegerGroup => {
            let m = i64::from(cfg.max_numerator);
            Value::Integer(BigInt::from(rng.gen_range(-m..=m)))
        }
        Descriptor::Product(l, r) => Value::pair(random_value(l, cfg, rng), random_value(r, cfg, rng)),
    }
}

/// A random `p` with `p ≤ u`.
fn random_left_factor(d: &Descriptor, u: &Value, cfg: &SampleConfig, rng: &mut ChaCha8Rng) -> Value {
    match (d, u) {
        (Descriptor::Free(_), Value::Word(w)) => {
            let n = rng.gen_range(0..=w.len());
            Value::Word(Word::from_letters(&w.letters()[..n]))
        }
        (Descriptor::Tropical, Value::Rational(r)) => {
            let q = i64::from(cfg.max_denominator);
            let k = rng.gen_range(0..=q);
            Value::Rational(r * BigRational::new(BigInt::from(k), BigInt::from(q)))
        }
        (Descriptor::IntegerGroup, _) => random_value(d, cfg, rng),
        (Descriptor::Product(l, r), Value::Pair(p)) => Value::pair(
            random_left_factor(l, &p.0, cfg, rng),
            random_left_factor(r, &p.1, cfg, rng),
        ),
        _ => unreachable!("value does not match its descriptor"),
    }
}

fn sample(axiom: Axiom, d: &Descriptor, cfg: &SampleConfig, rng: &mut ChaCha8Rng) -> Vec<Value> {
    let mut any = || random_value(d, cfg, rng);
    match axiom {
        Axiom::Lc | Axiom::Rc => {
            let (a, c) = (any(), any());
            let b = if rng.gen_bool(0.5) { a.clone() } else { random_value(d, cfg, rng) };
            vec![a, b, c]
        }
        Axiom::Rmge => {
            let (a, c) = (any(), any());
            let m = a.combine(&c);
            let b = if rng.gen_bool(0.75) {
                random_left_factor(d, &m, cfg, rng)
            } else {
                random_value(d, cfg, rng)
            };
            vec![a, b, m]
        }
        Axiom::Lsl => {
            let (l, x, y) = (any(), any(), any());
            let (a, b) = (l.combine(&x), l.combine(&y));
            let l = if rng.gen_bool(0.75) { l } else { random_value(d, cfg, rng) };
            vec![a, b, l]
        }
        Axiom::Gclf | Axiom::Assoc | Axiom::LpProbe => vec![any(), any(), any()],
        Axiom::Unit => vec![any()],
        Axiom::MgeSound => {
            let u = any();
            let a = random_left_factor(d, &u, cfg, rng);
            let b = random_left_factor(d, &u, cfg, rng);
            let x = u.left_quotient(&a).expect("left factor");
            let y = u.left_quotient(&b).expect("left factor");
            vec![a, b, x, y]
        }
        Axiom::EqPartition => {
            let (a, b, t, r) = (any(), any(), any(), any());
            let (c, dd) = if rng.gen_bool(0.75) {
                (t.combine(&a), t.combine(&b))
            } else {
                (random_value(d, cfg, rng), random_value(d, cfg, rng))
            };
            vec![a, b, c, dd, r]
        }
        Axiom::InfDistrib => vec![any(), any(), any(), any()],
    }
}

/// Runs `cfg.count` sampled trials of every axiom; deterministic in `cfg.seed`.
pub fn run_axiom_suite(monoid: &Monoid, cfg: &SampleConfig) -> Result<Vec<AxiomReport>> {
    cfg.validate()?;
    Ok(Axiom::ALL
        .into_iter()
        .enumerate()
        .map(|(i, axiom)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ((i as u64 + 1) << 56));
            let trials = (0..cfg.count).map(|_| sample(axiom, monoid.descriptor(), cfg, &mut rng));
            report(axiom, monoid, trials)
        })
        .collect())
}

/// Checks every axiom on all tuples drawn from `universe`.
pub fn run_axiom_suite_exhaustive(monoid: &Monoid, universe: &[Element]) -> Result<Vec<AxiomReport>> {
    if universe.is_empty() {
        return Err(Error::InvalidParameter("empty universe".into()));
    }
    for e in universe {
        monoid.check(e.monoid())?;
    }
    let values: Vec<Value> = universe.iter().map(|e| e.value().clone()).collect();
    Ok(Axiom::ALL
        .into_iter()
        .map(|axiom| {
            let k = axiom.arity();
            let total = values.len().pow(k as u32);
            let tuples = (0..total).map(|mut t| {
                (0..k)
                    .map(|_| {
                        let v = values[t % values.len()].clone();
                        t /= values.len();
                        v
                    })
                    .collect()
            });
            report(axiom, monoid, tuples)
        })
        .collect())
}

/// All words of length at most `max_len` as elements of `free:<alphabet>`.
pub fn free_universe(alphabet: &Alphabet, max_len: usize) -> (Monoid, Vec<Element>) {
    let monoid = Monoid::new(Descriptor::Free(alphabet.clone()));
    let elems = alphabet
        .words_up_to(max_len)
        .into_iter()
        .map(|w| monoid.wrap(Value::Word(w)))
        .collect();
    (monoid, elems)
}

fn report(axiom: Axiom, monoid: &Monoid, trials: impl Iterator<Item = Vec<Value>>) -> AxiomReport {
    let mut count = 0;
    for args in trials {
        count += 1;
        if !holds(axiom, monoid, &args) {
            return AxiomReport {
                axiom,
                passed: false,
                trials: count,
                counterexample: Some(args.into_iter().map(|v| monoid.wrap(v)).collect()),
            };
        }
    }
    AxiomReport {
        axiom,
        passed: true,
        trials: count,
        counterexample: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn suite(desc: &str) -> Vec<AxiomReport> {
        let cfg = SampleConfig {
            count: 1000,
            ..SampleConfig::default()
        };
        run_axiom_suite(&desc.parse().unwrap(), &cfg).unwrap()
    }

    #[test]
    fn shipped_monoids_pass() {
        for desc in ["free:ab", "trop", "zgroup", "prod(free:ab,trop)"] {
            let reports = suite(desc);
            assert_eq!(reports.len(), 11);
            for r in reports {
                assert!(r.passed, "{desc}: {r}");
                assert_eq!(r.trials, 1000);
            }
        }
    }

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(suite("trop"), suite("trop"));
    }

    #[test]
    fn exhaustive_on_tiny_free_monoid() {
        let (m, universe) = free_universe(&Alphabet::new("a").unwrap(), 3);
        assert_eq!(universe.len(), 4);
        for r in run_axiom_suite_exhaustive(&m, &universe).unwrap() {
            assert!(r.passed, "{r}");
            assert_eq!(r.trials, 4usize.pow(r.axiom.arity() as u32));
        }
    }

    #[test]
    fn report_lines() {
        let r = AxiomReport {
            axiom: Axiom::Gclf,
            passed: false,
            trials: 3,
            counterexample: Some(vec!["trop".parse::<Monoid>().unwrap().parse_element("1/2").unwrap()]),
        };
        assert_eq!(r.to_string(), "GCLF fail 3 1/2");
        assert_eq!("EQ_PARTITION".parse::<Axiom>().unwrap(), Axiom::EqPartition);
    }

    #[test]
    fn replay_rejects_a_broken_join_claim() {
        // RMGE on free:ab: "a" and "b" have an upper bound only if one prefixes the other
        let m: Monoid = "free:ab".parse().unwrap();
        let e = |s: &str| m.parse_element(s).unwrap();
        assert!(replay(Axiom::Rmge, &[e("a"), e("b"), e("ab")]).unwrap());
        assert!(replay(Axiom::Rmge, &[e("a"), e("ab"), e("abb")]).unwrap());
        assert!(replay(Axiom::Lc, &[e("a")]).is_err());
    }

    #[test]
    fn lp_probe_examples() {
        let t: Monoid = "trop".parse().unwrap();
        let n = |s: &str| t.parse_element(s).unwrap();
        let zeros = vec![n("0"), n("0"), n("0")];
        assert!(lp_probe(&n("1"), &n("1"), &zeros).unwrap().agrees());

        let f: Monoid = "free:a".parse().unwrap();
        let w = |s: &str| f.parse_element(s).unwrap();
        let seq: Vec<Element> = ["_", "a", "aa", "aaa"].iter().map(|s| w(s)).collect();
        assert_eq!(
            lp_probe(&w("a"), &w("aa"), &seq).unwrap(),
            ProbeReport::Consistent { u_le_v: true, unit_le_all: true }
        );

        let fab: Monoid = "free:ab".parse().unwrap();
        let x = |s: &str| fab.parse_element(s).unwrap();
        let seq = vec![x("a"), x("b"), x("ab")];
        assert_eq!(
            lp_probe(&x("a"), &x("b"), &seq).unwrap(),
            ProbeReport::NotAnEqualisingSequence { index: 0 }
        );
    }
}
