use altiset::collective::{collective_altiset, pairwise_elimination, SubsetFamily, ValuedGroundSet};
use altiset::ElementSet;
use altiset_oracles::{self as oracle, gen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ground(h: &[f64]) -> ValuedGroundSet {
    ValuedGroundSet::new((0..h.len()).map(|i| format!("x{i}")).collect(), h.to_vec()).unwrap()
}

fn family(h: &[f64], members: &[Vec<usize>]) -> SubsetFamily {
    let sets = members.iter().map(|m| m.iter().copied().collect()).collect();
    SubsetFamily::new(ground(h), sets).unwrap()
}

fn random_case(rng: &mut impl Rng) -> (Vec<f64>, Vec<Vec<usize>>) {
    let x = rng.gen_range(1..=5);
    let h = (0..x).map(|_| rng.gen_range(0..4) as f64).collect();
    let k = rng.gen_range(1..=8);
    (h, gen::family(rng, x, k))
}

#[test]
fn three_methods_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..300 {
        let (h, members) = random_case(&mut rng);
        let fam = family(&h, &members);
        let expected: ElementSet = oracle::collective_altiset(&h, &members).into_iter().collect();
        assert_eq!(collective_altiset(&fam).unwrap(), expected);
        assert_eq!(pairwise_elimination(&fam).unwrap(), expected);
        assert_eq!(fam.rh_relation().altiset(None).unwrap(), expected);
        assert!(!expected.is_empty());
    }
}

#[test]
fn powerset_keeps_only_the_ground_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for x in 1..=5 {
        let h: Vec<f64> = (0..x).map(|_| rng.gen_range(-3..3) as f64).collect();
        let members: Vec<Vec<usize>> =
            (0..1usize << x).map(|mask| (0..x).filter(|i| mask >> i & 1 == 1).collect()).collect();
        let fam = family(&h, &members);
        let full = ElementSet::from([(1 << x) - 1]);
        assert_eq!(collective_altiset(&fam).unwrap(), full);
        assert_eq!(pairwise_elimination(&fam).unwrap(), full);
    }
}

#[test]
fn invariant_under_increasing_transform_of_h() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..200 {
        let (h, members) = random_case(&mut rng);
        let moved: Vec<f64> = h.iter().map(|v| (v * 0.5).exp() - 7.0).collect();
        assert_eq!(
            collective_altiset(&family(&h, &members)).unwrap(),
            collective_altiset(&family(&moved, &members)).unwrap()
        );
    }
}

#[test]
fn indistinguishable_newcomer_joins_the_altiset() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..200 {
        let (h, mut members) = random_case(&mut rng);
        let before = collective_altiset(&family(&h, &members)).unwrap();
        let pick = *before.iter().next().unwrap();
        // same threshold profile: swap an element for one of equal value
        let mut twin = members[pick].clone();
        if let Some(pos) = (0..twin.len()).find(|&p| {
            (0..h.len()).any(|y| !twin.contains(&y) && h[y] == h[twin[p]])
        }) {
            let old = twin[pos];
            twin[pos] = (0..h.len()).find(|y| !members[pick].contains(y) && h[*y] == h[old]).unwrap();
            twin.sort_unstable();
        }
        members.push(twin);
        let after = collective_altiset(&family(&h, &members)).unwrap();
        let mut expected = before.clone();
        expected.insert(members.len() - 1);
        assert_eq!(after, expected);
    }
}
