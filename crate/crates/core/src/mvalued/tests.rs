use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::word::parse_word;
use crate::{Automorphism, AutomorphismGroup, Backend, Error};

fn word_map(pairs: &[(&str, &str)]) -> BTreeMap<String, crate::Word> {
    pairs.iter().map(|(g, w)| (String::from(*g), parse_word(w).unwrap())).collect()
}

fn nat(v: u64) -> Element {
    Element::Nat(v)
}

fn ms(items: &[Element]) -> MultiSet<Element> {
    MultiSet::from_items(items.iter().cloned()).unwrap()
}

fn z_pm1() -> CosetGroup {
    let z = Backend::integers("x").unwrap();
    let neg = Automorphism::from_words(&z, "neg", &word_map(&[("x", "x^-1")]), None).unwrap();
    let a = AutomorphismGroup::close(&z, &[neg], 4).unwrap();
    CosetGroup::new(z, a).unwrap()
}

fn s3() -> Backend {
    Backend::permutation(3, ["s", "t"], vec![vec![1, 0, 2], vec![1, 2, 0]], Budget::DEFAULT).unwrap()
}

fn s3_conj() -> CosetGroup {
    let g = s3();
    let conj = Automorphism::from_words(&g, "conj", &word_map(&[("s", "s"), ("t", "s*t*s^-1")]), None).unwrap();
    let a = AutomorphismGroup::close(&g, &[conj], 8).unwrap();
    CosetGroup::new(g, a).unwrap()
}

fn f2_swap() -> CosetGroup {
    let f = Backend::free(["g1", "g2"]).unwrap();
    let m = word_map(&[("g1", "g2"), ("g2", "g1")]);
    let sw = Automorphism::from_words(&f, "swap", &m, Some(&m)).unwrap();
    let a = AutomorphismGroup::close(&f, &[sw], 4).unwrap();
    CosetGroup::new(f, a).unwrap()
}

fn z2_pm1() -> CosetGroup {
    let z2 = Backend::free_abelian(["x", "y"]).unwrap();
    let neg = Automorphism::from_words(&z2, "neg", &word_map(&[("x", "x^-1"), ("y", "y^-1")]), None).unwrap();
    let a = AutomorphismGroup::close(&z2, &[neg], 4).unwrap();
    CosetGroup::new(z2, a).unwrap()
}

fn example_h_times_f() -> CosetGroup {
    let b = Backend::direct_product(vec![Backend::cyclic(3, "h").unwrap(), Backend::free(["g1", "g2"]).unwrap()])
        .unwrap();
    let m = word_map(&[("h", "h^-1"), ("g1", "g1"), ("g2", "g2")]);
    let a = Automorphism::from_words(&b, "a", &m, Some(&m)).unwrap();
    let group = AutomorphismGroup::close(&b, &[a], 4).unwrap();
    CosetGroup::new(b, group).unwrap()
}

#[test]
fn nat_examples() {
    let g = NatGroup::new();
    for x in 0..20 {
        assert_eq!(g.mul(&nat(0), &nat(x)).unwrap(), MultiSet::constant(nat(x), 2).unwrap());
    }
    assert_eq!(g.mul(&nat(3), &nat(5)).unwrap(), ms(&[nat(2), nat(8)]));
    assert_eq!(g.mul(&nat(4), &nat(4)).unwrap(), ms(&[nat(0), nat(8)]));
    assert_eq!(g.mul(&nat(u64::MAX), &nat(1)), Err(Error::Overflow));
    assert_eq!(g.mul(&nat(1), &Element::int(1)), Err(Error::BackendMismatch));
}

#[test]
fn coset_project_examples() {
    let x = z_pm1();
    assert_eq!(x.project(&Element::int(5)).unwrap(), Element::int(5));
    assert_eq!(x.project(&Element::int(-5)).unwrap(), Element::int(5));
    assert_eq!(x.orbit(&Element::int(5)).unwrap(), [Element::int(5), Element::int(-5)].into());
    assert_eq!(x.project(&x.backend().identity()).unwrap(), x.unit());

    let x = example_h_times_f();
    let b = x.backend();
    let h = b.eval_word(&parse_word("h").unwrap()).unwrap();
    let h2 = b.eval_word(&parse_word("h^2").unwrap()).unwrap();
    assert_eq!(x.project(&h).unwrap(), x.project(&h2).unwrap());
    assert_eq!(x.valence(), 2);
}

#[test]
fn coset_mul_examples() {
    let x = z_pm1();
    let p = |k: i64| x.project(&Element::int(k)).unwrap();
    assert_eq!(x.mul(&p(3), &p(5)).unwrap(), ms(&[p(2), p(8)]));
    assert_eq!(x.mul(&p(4), &p(4)).unwrap(), ms(&[p(0), p(8)]));
    for k in -6..=6 {
        assert_eq!(x.mul(&x.unit(), &p(k)).unwrap(), MultiSet::constant(p(k), 2).unwrap());
    }
}

#[test]
fn coset_inv_examples() {
    let x = z_pm1();
    assert_eq!(x.inv(&Element::int(5)).unwrap(), Element::int(5));
    assert_eq!(x.inv(&x.unit()).unwrap(), x.unit());

    let x = f2_swap();
    let b = x.backend();
    let g1 = b.generator(0).unwrap();
    let g1inv = b.inv(&g1).unwrap();
    let swap = &x.automorphisms().elements()[1];
    let oracle = core::cmp::min(g1inv.clone(), b.apply(swap, &g1inv).unwrap());
    assert_eq!(x.inv(&x.project(&g1).unwrap()).unwrap(), oracle);
}

#[test]
fn nat_matches_coset_of_integers() {
    let nat_group = NatGroup::new();
    let coset = z_pm1();
    let to_nat = |e: &Element| match e {
        Element::Vector(v) => nat(v[0].unsigned_abs()),
        _ => unreachable!(),
    };
    for x in 0..=40i64 {
        for y in 0..=40i64 {
            let c = coset.mul(&Element::int(x), &Element::int(y)).unwrap().map(to_nat).unwrap();
            assert_eq!(c, nat_group.mul(&nat(x as u64), &nat(y as u64)).unwrap());
        }
    }
}

#[test]
fn double_coset_examples() {
    let g = s3();
    let h = vec![Element::Perm(vec![1, 0, 2])];
    let x = DoubleCosetGroup::new(g.clone(), &h, Budget::DEFAULT).unwrap();
    assert_eq!(x.valence(), 2);

    // oracle: double cosets from explicit permutation composition
    let perms: Vec<Vec<u32>> = vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ];
    let comp = |p: &[u32], q: &[u32]| -> Vec<u32> { p.iter().map(|&i| q[i as usize]).collect() };
    let hs = [vec![0, 1, 2], vec![1, 0, 2]];
    let class = |g: &[u32]| -> Vec<u32> {
        let mut members: Vec<Vec<u32>> =
            hs.iter().flat_map(|a| hs.iter().map(move |b| (a.clone(), b.clone()))).map(|(a, b)| comp(&comp(&a, g), &b)).collect();
        members.sort();
        members[0].clone()
    };
    let c123 = vec![1, 2, 0];
    let x1 = Element::Perm(class(&c123));
    assert_eq!(x.project(&Element::Perm(c123.clone())).unwrap(), x1);
    let expected = ms(&hs
        .iter()
        .map(|h| Element::Perm(class(&comp(&comp(&c123, h), &c123))))
        .collect::<Vec<_>>());
    let product = x.mul(&x1, &x1).unwrap();
    assert_eq!(product, expected);
    assert!(product.contains(&x.unit()));

    for p in &perms {
        let y = Element::Perm(class(p));
        assert_eq!(x.mul(&x.unit(), &y).unwrap(), MultiSet::constant(y.clone(), 2).unwrap());
        let inv: Vec<u32> = (0..3u32).map(|i| p.iter().position(|&v| v == i).unwrap() as u32).collect();
        assert_eq!(x.inv(&y).unwrap(), Element::Perm(class(&inv)));
    }
    assert_eq!(x.carrier(Budget::DEFAULT).unwrap().unwrap().len(), 2);

    let f = Backend::free(["a"]).unwrap();
    assert!(matches!(DoubleCosetGroup::new(f, &[], Budget::DEFAULT), Err(Error::InfiniteBackendUnsupported)));
}

#[test]
fn axioms_on_builtin_nat() {
    let sample: Vec<Element> = (0..=10).map(nat).collect();
    let report = check_axioms(&NatGroup::new(), &sample).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.sample_size, 11);
}

#[test]
fn axioms_on_finite_carriers() {
    let groups: Vec<MvGroup> = vec![
        s3_conj().into(),
        DoubleCosetGroup::new(s3(), &[Element::Perm(vec![1, 0, 2])], Budget::DEFAULT).unwrap().into(),
        DoubleCosetGroup::new(s3(), &[Element::Perm(vec![1, 2, 0])], Budget::DEFAULT).unwrap().into(),
    ];
    for g in groups {
        let carrier = g.carrier(Budget::DEFAULT).unwrap().unwrap();
        assert!(carrier.iter().all(|x| g.contains(x)));
        let report = check_axioms(&g, &carrier).unwrap();
        assert!(report.passed(), "{}: {report:?}", g.carrier_kind());
    }
    assert_eq!(s3_conj().carrier(Budget::DEFAULT).unwrap().unwrap().len(), 4);
}

#[test]
fn axioms_on_infinite_coset_samples() {
    let x = z2_pm1();
    let sample: Vec<Element> = [[0, 0], [1, 0], [0, 1], [1, 1], [1, -1], [2, -3]]
        .iter()
        .map(|v| x.project(&Element::Vector(v.to_vec())).unwrap())
        .collect();
    assert!(check_axioms(&x, &sample).unwrap().passed());

    let x = f2_swap();
    let b = x.backend();
    let sample: Vec<Element> = ["e", "g1", "g1^-1", "g1*g2", "g1*g2^-1", "g1^2*g2"]
        .iter()
        .map(|w| x.project(&b.eval_word(&parse_word(w).unwrap()).unwrap()).unwrap())
        .collect();
    assert!(check_axioms(&x, &sample).unwrap().passed());
}

#[test]
fn mutated_nat_fails_with_witness() {
    let sample: Vec<Element> = (0..=10).map(nat).collect();
    let report = check_axioms(&NatGroup::mutated(), &sample).unwrap();
    assert!(!report.passed());
    assert!(!report.unit_holds());
    assert_eq!(report.unit_witness, Some(nat(0)));
    assert!(report.inverse_witness.is_some());
}

#[test]
fn sample_must_contain_unit() {
    assert!(matches!(check_axioms(&NatGroup::new(), &[nat(1)]), Err(Error::PreconditionViolated(_))));
}

#[test]
fn representative_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for x in [f2_swap(), example_h_times_f(), s3_conj(), z2_pm1()] {
        let b = x.backend().clone();
        let gens = b.generators();
        let random = |rng: &mut ChaCha8Rng| {
            let mut g = b.identity();
            for _ in 0..rng.random_range(0..6) {
                let s = &gens[rng.random_range(0..gens.len())];
                let s = if rng.random_bool(0.5) { b.inv(s).unwrap() } else { s.clone() };
                g = b.mul(&g, &s).unwrap();
            }
            g
        };
        for _ in 0..200 {
            let (g, h) = (random(&mut rng), random(&mut rng));
            let expected = x.mul(&x.project(&g).unwrap(), &x.project(&h).unwrap()).unwrap();
            let go: Vec<Element> = x.orbit(&g).unwrap().into_iter().collect();
            let ho: Vec<Element> = x.orbit(&h).unwrap().into_iter().collect();
            let g2 = &go[rng.random_range(0..go.len())];
            let h2 = &ho[rng.random_range(0..ho.len())];
            assert_eq!(x.product_of_lifts(g2, h2).unwrap(), expected);

            // support is the projection of all lifted products
            let mut all = BTreeSet::new();
            for a in &go {
                for c in &ho {
                    all.insert(x.project(&b.mul(a, c).unwrap()).unwrap());
                }
            }
            assert_eq!(expected.support_set(), all);
            assert_eq!(expected.total(), x.valence());
        }
    }
}
