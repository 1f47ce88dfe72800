//! Joins, meets and most general equalisers against brute-force search.

use mgeseq::monoid::{mge_tuple, wlp_witness};
use mgeseq::{Alphabet, Element, Monoid};

fn free_words(max_len: usize) -> (Monoid, Vec<Element>) {
    let m: Monoid = "free:ab".parse().unwrap();
    let words = Alphabet::new("ab")
        .unwrap()
        .words_up_to(max_len)
        .into_iter()
        .map(|w| Element::word(&m, w).unwrap())
        .collect();
    (m, words)
}

fn small_rationals(m: &Monoid) -> Vec<Element> {
    let mut out = Vec::new();
    for q in 1..=3 {
        for p in 0..=9 {
            out.push(m.parse_element(&format!("{p}/{q}")).unwrap());
        }
    }
    out
}

/// Least upper bound by search: an upper bound below every other upper bound.
fn brute_join(a: &Element, b: &Element, universe: &[Element]) -> Option<Element> {
    let ups: Vec<&Element> = universe
        .iter()
        .filter(|m| a.le(m).unwrap() && b.le(m).unwrap())
        .collect();
    ups.iter()
        .find(|j| ups.iter().all(|m| j.le(m).unwrap()))
        .map(|j| (*j).clone())
}

fn brute_meet(a: &Element, b: &Element, universe: &[Element]) -> Element {
    let lows: Vec<&Element> = universe
        .iter()
        .filter(|l| l.le(a).unwrap() && l.le(b).unwrap())
        .collect();
    lows.iter()
        .find(|g| lows.iter().all(|l| l.le(g).unwrap()))
        .map(|g| (*g).clone())
        .expect("some lower bound dominates")
}

#[test]
fn free_join_and_meet_match_search() {
    let (_, words) = free_words(4);
    // every join of words up to length 4 is itself short, so the universe suffices
    for a in &words {
        for b in &words {
            assert_eq!(a.join(b).unwrap(), brute_join(a, b, &words), "{a} v {b}");
            assert_eq!(a.meet(b).unwrap(), brute_meet(a, b, &words), "{a} ^ {b}");
        }
    }
}

#[test]
fn tropical_join_and_meet_match_search() {
    let m: Monoid = "trop".parse().unwrap();
    let values = small_rationals(&m);
    for a in &values {
        for b in &values {
            let j = brute_join(a, b, &values).unwrap();
            assert!(a.join(b).unwrap().unwrap().sim(&j).unwrap());
            assert!(a.meet(b).unwrap().sim(&brute_meet(a, b, &values)).unwrap());
        }
    }
}

#[test]
fn free_mge_is_most_general_among_short_equalisers() {
    let (_, words) = free_words(3);
    let (_, candidates) = free_words(4);
    for a in &words {
        for b in &words {
            let mge = mge_tuple(&[a.clone(), b.clone()]).unwrap();
            let equalisers: Vec<(&Element, &Element)> = candidates
                .iter()
                .flat_map(|x| candidates.iter().map(move |y| (x, y)))
                .filter(|(x, y)| a.op(x).unwrap() == b.op(y).unwrap())
                .collect();
            match mge {
                None => assert!(equalisers.is_empty(), "{a}, {b} have equalisers"),
                Some(m) => {
                    assert_eq!(a.op(&m[0]).unwrap(), b.op(&m[1]).unwrap());
                    for (x, y) in equalisers {
                        // every equaliser factors through the mge with one common right factor
                        let t = x.quotient(&m[0]).unwrap();
                        assert_eq!(y.quotient(&m[1]).unwrap(), t, "{a},{b}: ({x},{y})");
                    }
                }
            }
        }
    }
}

#[test]
fn tropical_mge_example_and_factoring() {
    let m: Monoid = "trop".parse().unwrap();
    let e = |s: &str| m.parse_element(s).unwrap();
    let mge = mge_tuple(&[e("1"), e("3")]).unwrap().unwrap();
    assert_eq!((mge[0].to_string(), mge[1].to_string()), ("2".into(), "0".into()));
    let values = small_rationals(&m);
    for x in &values {
        for y in &values {
            if e("1").op(x).unwrap() == e("3").op(y).unwrap() {
                assert_eq!(x.quotient(&mge[0]).unwrap(), y.quotient(&mge[1]).unwrap());
            }
        }
    }
}

#[test]
fn wlp_witness_is_unit_everywhere() {
    for desc in ["free:ab", "trop", "zgroup", "prod(free:ab,trop)"] {
        let m: Monoid = desc.parse().unwrap();
        let u = m.unit();
        assert!(wlp_witness(&u, &u).unwrap().is_unit());
    }
}
