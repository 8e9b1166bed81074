//! Brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use dualbraid_core::families::GroupName;
use dualbraid_core::garside::{self, dual_presentation, normal_form, MonoidElement};
use dualbraid_core::hurwitz::ConjugationTable;
use dualbraid_core::interval::{build_interval, IntervalPoset};
use dualbraid_core::{ElemKey, Perm, ReflectionGroup};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn family(name: &str) -> (Arc<ReflectionGroup>, IntervalPoset) {
    let entry = GroupName::parse(name).unwrap().build().unwrap();
    let g = Arc::new(ReflectionGroup::new(entry).unwrap());
    let p = build_interval(&g).unwrap();
    (g, p)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every element of `W` with its reflection length, by breadth-first search
/// over left multiplication by reflections.
pub fn reflection_lengths(g: &ReflectionGroup) -> HashMap<ElemKey, usize> {
    let id = g.roots().identity();
    let mut dist = HashMap::new();
    dist.insert(g.key(&id), 0);
    let mut queue = VecDeque::from([(id, 0usize)]);
    while let Some((w, d)) = queue.pop_front() {
        for r in g.reflection_perms() {
            let v = r.compose(&w);
            let k = g.key(&v);
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(k) {
                e.insert(d + 1);
                queue.push_back((v, d + 1));
            }
        }
    }
    dist
}

/// (a) `|W| = ∏ d_i` by generator closure.
pub fn check_group_order(g: &ReflectionGroup) -> Result<(), String> {
    let order = g.entry().order;
    let all = g
        .enumerate_elements(order as usize + 1)
        .ok_or_else(|| format!("{}: more than {order} elements", g.name()))?;
    if all.len() as u128 != order {
        return Err(format!(
            "{}: BFS found {} elements, ∏d_i = {order}",
            g.name(),
            all.len()
        ));
    }
    Ok(())
}

/// (b) reflection length equals codim fix on `[1, c]`, and (c) the interval
/// equals `{w : l_R(w) + l_R(w⁻¹c) = l_R(c)}` over the whole group.
pub fn check_interval_against_group(g: &ReflectionGroup, p: &IntervalPoset) -> Result<(), String> {
    let name = g.name();
    let lengths = reflection_lengths(g);
    if lengths.len() as u128 != g.entry().order {
        return Err(format!("{name}: reflection BFS reached {} elements", lengths.len()));
    }
    for u in 0..p.len() {
        let l = lengths[&p.key(u)];
        if l != p.rank_of(u) || l != g.codim(p.element(u)) {
            return Err(format!("{name}: element {u} has l_R = {l}, rank {}", p.rank_of(u)));
        }
    }
    let all = g.enumerate_elements(lengths.len() + 1).unwrap();
    let c = p.element(p.top());
    let lc = lengths[&p.key(p.top())];
    let brute: HashSet<ElemKey> = all
        .iter()
        .filter(|w| {
            let winv_c = w.inverse().compose(c);
            lengths[&g.key(w)] + lengths[&g.key(&winv_c)] == lc
        })
        .map(|w| g.key(w))
        .collect();
    let built: HashSet<ElemKey> = (0..p.len()).map(|u| p.key(u)).collect();
    if brute != built {
        return Err(format!(
            "{name}: brute-force interval has {} elements, downward search {}",
            brute.len(),
            built.len()
        ));
    }
    Ok(())
}

/// Greatest simple prefix of the product of a word of simples, found by
/// closing one atom spelling of the word under the dual braid relations.
/// `None` if the closure grows beyond `limit` words.
pub fn brute_prefix(
    p: &IntervalPoset,
    relations: &[([usize; 2], [usize; 2])],
    word: &[usize],
    limit: usize,
) -> Option<usize> {
    let mut rewrite: HashMap<[usize; 2], Vec<[usize; 2]>> = HashMap::new();
    for (l, r) in relations {
        rewrite.entry(*l).or_default().push(*r);
        rewrite.entry(*r).or_default().push(*l);
    }
    let mut start = Vec::new();
    for &s in word {
        // one spelling: follow first lower covers down to the bottom
        let mut spelled = Vec::new();
        let mut u = s;
        while u != p.bottom() {
            let cover = p.lower_covers(u)[0];
            spelled.push(p.reflection_atom(cover.right as usize).unwrap());
            u = cover.below as usize;
        }
        spelled.reverse();
        start.extend(spelled);
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(w) = queue.pop() {
        for i in 1..w.len() {
            if let Some(rs) = rewrite.get(&[w[i - 1], w[i]]) {
                for r in rs {
                    let mut v = w.clone();
                    v[i - 1] = r[0];
                    v[i] = r[1];
                    if seen.insert(v.clone()) {
                        if seen.len() > limit {
                            return None;
                        }
                        queue.push(v);
                    }
                }
            }
        }
    }
    // simples spelled by prefixes of equivalent words
    let mut prefixes: HashSet<usize> = HashSet::from([p.bottom()]);
    for w in &seen {
        let mut acc = p.bottom();
        for &a in w {
            match garside::simple_product(p, acc, a) {
                Some(next) => {
                    acc = next;
                    prefixes.insert(acc);
                }
                None => break,
            }
        }
    }
    let best = *prefixes.iter().max_by_key(|&&s| (p.rank_of(s), s))?;
    prefixes.iter().all(|&s| p.leq(s, best)).then_some(best)
}

/// (d) the left-weighted normal form starts with the greatest simple prefix
/// on `samples` random two-factor words. Words whose closure exceeds
/// `limit` are redrawn.
pub fn check_greedy_prefix(p: &IntervalPoset, samples: usize, seed: u64, limit: usize) -> Result<(), String> {
    let name = p.group().name().to_string();
    let conj = ConjugationTable::new(p.group());
    let pres = dual_presentation(p, &conj).map_err(|e| e.to_string())?;
    let mut rng = rng(seed);
    let mut done = 0;
    let mut draws = 0;
    while done < samples {
        draws += 1;
        if draws > samples * 50 {
            return Err(format!("{name}: too many oversized closures"));
        }
        let word = [rng.gen_range(0..p.len()), rng.gen_range(0..p.len())];
        let Some(brute) = brute_prefix(p, &pres.relations, &word, limit) else {
            continue;
        };
        let nf = normal_form(p, &word);
        let greedy = nf.factors.first().copied().unwrap_or(p.bottom());
        if greedy != brute {
            return Err(format!(
                "{name}: word {word:?}: greedy head {greedy}, brute-force prefix {brute}"
            ));
        }
        done += 1;
    }
    Ok(())
}

fn random_element(p: &IntervalPoset, rng: &mut ChaCha8Rng, max_len: usize) -> MonoidElement {
    let len = rng.gen_range(0..=max_len);
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..p.len())).collect();
    normal_form(p, &word)
}

fn image(p: &IntervalPoset, word: &[usize]) -> Perm {
    word.iter()
        .fold(p.group().roots().identity(), |acc, &s| acc.compose(p.element(s)))
}

/// Normal-form idempotence, associativity, the monoid morphism to `W`,
/// `δ`-divisibility, `τ` bijectivity and presentation soundness.
pub fn check_garside(p: &IntervalPoset, triples: usize, seed: u64) -> Result<(), String> {
    let name = p.group().name().to_string();
    let mut rng = rng(seed);
    let delta = garside::delta(p);
    for _ in 0..triples {
        let x = random_element(p, &mut rng, 3);
        let y = random_element(p, &mut rng, 3);
        let z = random_element(p, &mut rng, 3);
        if normal_form(p, &x.factors) != x {
            return Err(format!("{name}: normal form of {x:?} is not idempotent"));
        }
        for w in x.factors.windows(2) {
            if !garside::is_left_weighted(p, w[0], w[1]) {
                return Err(format!("{name}: {x:?} is not left-weighted"));
            }
        }
        let left = garside::multiply(p, &garside::multiply(p, &x, &y), &z);
        let right = garside::multiply(p, &x, &garside::multiply(p, &y, &z));
        if left != right {
            return Err(format!("{name}: associativity fails on {x:?} {y:?} {z:?}"));
        }
        let mut word = x.factors.clone();
        word.extend(&y.factors);
        if image(p, &left.factors[..]) != image(p, &[word, z.factors.clone()].concat()) {
            return Err(format!("{name}: normal form changes the image in W"));
        }
        let divisible = garside::left_divides(p, &delta, &x);
        if divisible != (x.factors.first() == Some(&p.top())) {
            return Err(format!("{name}: δ-divisibility of {x:?}"));
        }
        if !garside::left_divides(p, &x, &garside::multiply(p, &x, &y)) {
            return Err(format!("{name}: {x:?} does not divide x·y"));
        }
    }
    // every simple divides δ on both sides, τ permutes S
    let mut image_of_tau = HashSet::new();
    for s in 0..p.len() {
        let k = p.kreweras(s);
        if garside::simple_product(p, s, k) != Some(p.top()) {
            return Err(format!("{name}: {s} is not a left divisor of δ"));
        }
        let t = garside::tau(p, s);
        if garside::simple_product(p, garside::tau(p, k), s) != Some(p.top()) {
            return Err(format!("{name}: {s} is not a right divisor of δ"));
        }
        if p.rank_of(t) != p.rank_of(s) || garside::tau_inverse(p, t) != s {
            return Err(format!("{name}: τ misbehaves on {s}"));
        }
        image_of_tau.insert(t);
    }
    if image_of_tau.len() != p.len() {
        return Err(format!("{name}: τ is not a bijection of S"));
    }
    let conj = ConjugationTable::new(p.group());
    let pres = dual_presentation(p, &conj).map_err(|e| e.to_string())?;
    for (l, r) in &pres.relations {
        if image(p, l) != image(p, r) {
            return Err(format!("{name}: relation {l:?} = {r:?} fails in W"));
        }
        if !garside::word_equal(p, l, r) {
            return Err(format!("{name}: relation {l:?} = {r:?} fails in M"));
        }
    }
    let by_chains: u128 = (0..p.len())
        .filter(|&u| p.rank_of(u) == 2)
        .map(|u| p.chains_below(u))
        .sum();
    if pres.relations.len() as u128 != by_chains {
        return Err(format!(
            "{name}: {} relations, rank-2 chain count {by_chains}",
            pres.relations.len()
        ));
    }
    let poin = p.poincare_polynomial();
    if pres.generators.len() as u128 != poin[1] {
        return Err(format!(
            "{name}: {} generators, Poin t-coefficient {}",
            pres.generators.len(),
            poin[1]
        ));
    }
    Ok(())
}

/// `u ≼ w ⟺ K(w) ≼ K(u)` on all pairs.
pub fn check_kreweras(p: &IntervalPoset) -> Result<(), String> {
    for u in 0..p.len() {
        for w in 0..p.len() {
            if p.leq(u, w) != p.leq(p.kreweras(w), p.kreweras(u)) {
                return Err(format!("{}: Kreweras fails on ({u}, {w})", p.group().name()));
            }
        }
    }
    Ok(())
}
