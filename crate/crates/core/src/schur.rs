//! Combinatorial kernels for the Schur basis: Kostka numbers,
//! Littlewood–Richardson coefficients, Schur products and the
//! Schur ↔ monomial transition.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::Result;
use crate::formal_sum::FormalSum;
use crate::partition::Partition;

/// K_{λμ}: semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka(lambda: &Partition, mu: &Partition) -> u64 {
    if lambda.size() != mu.size() || !lambda.dominates(mu) {
        return 0;
    }
    let mut memo = HashMap::new();
    kostka_rec(lambda.parts(), mu.parts(), &mut memo)
}

// Peel off the horizontal strip holding the largest entry.
fn kostka_rec(
    shape: &[usize],
    content: &[usize],
    memo: &mut HashMap<(Vec<usize>, usize), u64>,
) -> u64 {
    let Some((&last, rest)) = content.split_last() else {
        return u64::from(shape.is_empty());
    };
    let key = (shape.to_vec(), content.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    let mut inner = vec![0; shape.len()];
    for_each_strip_removal(shape, last, 0, &mut inner, &mut |rho| {
        let trimmed: Vec<usize> = rho.iter().copied().take_while(|&p| p > 0).collect();
        total += kostka_rec(&trimmed, rest, memo);
    });
    memo.insert(key, total);
    total
}

/// Calls `f` with every ρ such that `shape / ρ` is a horizontal strip of
/// `remaining` boxes, i.e. `shape[i+1] <= ρ[i] <= shape[i]`.
fn for_each_strip_removal(
    shape: &[usize],
    remaining: usize,
    row: usize,
    rho: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if row == shape.len() {
        if remaining == 0 {
            f(rho);
        }
        return;
    }
    let below = shape.get(row + 1).copied().unwrap_or(0);
    let max_take = (shape[row] - below).min(remaining);
    for take in 0..=max_take {
        rho[row] = shape[row] - take;
        for_each_strip_removal(shape, remaining - take, row + 1, rho, f);
    }
}

/// c^λ_{μν}: LR skew tableaux of shape λ/μ with content ν.
pub fn lr_coefficient(mu: &Partition, nu: &Partition, lambda: &Partition) -> u64 {
    if mu.size() + nu.size() != lambda.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    if nu.is_empty() {
        return 1;
    }
    LrSearch::new(mu, nu, lambda).count()
}

/// Backtracking over fillings of λ/μ in reverse reading order (rows top to
/// bottom, each row right to left), pruning on the lattice condition.
struct LrSearch<'a> {
    mu: &'a Partition,
    lambda: &'a Partition,
    content: Vec<usize>,
    cells: Vec<(usize, usize)>,
    grid: Vec<Vec<usize>>,
    used: Vec<usize>,
}

impl<'a> LrSearch<'a> {
    fn new(mu: &'a Partition, nu: &'a Partition, lambda: &'a Partition) -> Self {
        let mut cells = Vec::with_capacity(nu.size());
        for r in 0..lambda.rows() {
            for c in (mu.part(r)..lambda.part(r)).rev() {
                cells.push((r, c));
            }
        }
        LrSearch {
            mu,
            lambda,
            content: nu.parts().to_vec(),
            cells,
            grid: lambda.parts().iter().map(|&w| vec![0; w]).collect(),
            used: vec![0; nu.rows() + 1],
        }
    }

    fn count(&mut self) -> u64 {
        self.fill(0)
    }

    fn fill(&mut self, idx: usize) -> u64 {
        let Some(&(r, c)) = self.cells.get(idx) else {
            return 1;
        };
        let hi = if c + 1 < self.lambda.part(r) {
            self.grid[r][c + 1]
        } else {
            self.content.len()
        };
        let lo = if r > 0 && c >= self.mu.part(r - 1) {
            self.grid[r - 1][c] + 1
        } else {
            1
        };
        // In an LR tableau the entries of row r are at most r + 1.
        let hi = hi.min(r + 1);
        let mut total = 0;
        for x in lo..=hi {
            if self.used[x] >= self.content[x - 1] {
                continue;
            }
            if x > 1 && self.used[x] + 1 > self.used[x - 1] {
                continue;
            }
            self.used[x] += 1;
            self.grid[r][c] = x;
            total += self.fill(idx + 1);
            self.grid[r][c] = 0;
            self.used[x] -= 1;
        }
        total
    }
}

type ProductCache = RwLock<HashMap<(Partition, Partition), FormalSum>>;

fn product_cache() -> &'static ProductCache {
    static CACHE: OnceLock<ProductCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// s_μ · s_ν = Σ_λ c^λ_{μν} s_λ.
pub fn schur_product(mu: &Partition, nu: &Partition) -> FormalSum {
    let key = if mu <= nu {
        (mu.clone(), nu.clone())
    } else {
        (nu.clone(), mu.clone())
    };
    if let Some(hit) = product_cache().read().expect("cache poisoned").get(&key) {
        return hit.clone();
    }
    let product = compute_product(&key.0, &key.1);
    product_cache()
        .write()
        .expect("cache poisoned")
        .insert(key, product.clone());
    product
}

fn compute_product(mu: &Partition, nu: &Partition) -> FormalSum {
    if mu.is_empty() {
        return FormalSum::singleton(nu.clone(), 1);
    }
    let d = mu.size() + nu.size();
    let width = mu.part(0) + nu.part(0);
    let mut out = FormalSum::zero();
    for lambda in Partition::enumerate(d, Some(mu.rows() + nu.rows())) {
        if lambda.part(0) > width || !lambda.contains(mu) || !lambda.contains(nu) {
            continue;
        }
        let c = lr_coefficient(mu, nu, &lambda);
        if c > 0 {
            let c = i64::try_from(c).expect("LR coefficient exceeds i64");
            out.add_term(lambda, c).expect("fresh label");
        }
    }
    out
}

/// Bilinear extension of [`schur_product`].
pub fn multiply_schur_sums(a: &FormalSum, b: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero();
    for (mu, &x) in a {
        for (nu, &y) in b {
            let xy = x.checked_mul(y).ok_or(crate::Error::Overflow)?;
            out.add_scaled(&schur_product(mu, nu), xy)?;
        }
    }
    Ok(out)
}

type TransitionCache = RwLock<HashMap<Partition, FormalSum>>;

fn transition_cache() -> &'static TransitionCache {
    static CACHE: OnceLock<TransitionCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// s_λ = Σ_μ K_{λμ} m_μ.
pub fn schur_to_monomial(lambda: &Partition) -> FormalSum {
    if let Some(hit) = transition_cache().read().expect("cache poisoned").get(lambda) {
        return hit.clone();
    }
    let mut out = FormalSum::zero();
    for mu in Partition::enumerate(lambda.size(), None) {
        let k = kostka(lambda, &mu);
        if k > 0 {
            out.add_term(mu, i64::try_from(k).expect("Kostka number exceeds i64"))
                .expect("fresh label");
        }
    }
    transition_cache()
        .write()
        .expect("cache poisoned")
        .insert(lambda.clone(), out.clone());
    out
}

/// Linear extension of [`schur_to_monomial`].
pub fn schur_sum_to_monomial(f: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero();
    for (lambda, &c) in f {
        out.add_scaled(&schur_to_monomial(lambda), c)?;
    }
    Ok(out)
}

/// Inverts the unitriangular Kostka system, grade by grade.
///
/// Within a size the canonical order is a linear extension of dominance, so
/// the first remaining label is always a leading term.
pub fn monomial_to_schur(f: &FormalSum) -> Result<FormalSum> {
    let mut remainder = f.clone();
    let mut out = FormalSum::zero();
    while let Some((lead, c)) = remainder.first() {
        let lead = lead.clone();
        remainder.add_scaled(&schur_to_monomial(&lead), -c)?;
        out.add_term(lead, c)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use proptest::prelude::*;

    /// Brute-force SSYT count: try every filling with entries 1..=rows(μ).
    fn kostka_by_enumeration(lambda: &Partition, mu: &Partition) -> u64 {
        if lambda.size() != mu.size() {
            return 0;
        }
        let cells: Vec<(usize, usize)> = (0..lambda.rows())
            .flat_map(|r| (0..lambda.part(r)).map(move |c| (r, c)))
            .collect();
        let max = mu.rows();
        let mut grid: Vec<Vec<usize>> = lambda.parts().iter().map(|&w| vec![0; w]).collect();
        fn go(
            idx: usize,
            cells: &[(usize, usize)],
            grid: &mut Vec<Vec<usize>>,
            max: usize,
            mu: &Partition,
        ) -> u64 {
            if idx == cells.len() {
                let mut counts = vec![0; max + 1];
                for row in grid.iter() {
                    for &x in row {
                        counts[x] += 1;
                    }
                }
                return u64::from((1..=max).all(|i| counts[i] == mu.part(i - 1)));
            }
            let (r, c) = cells[idx];
            let mut total = 0;
            for x in 1..=max {
                if c > 0 && grid[r][c - 1] > x {
                    continue;
                }
                if r > 0 && grid[r - 1][c] >= x {
                    continue;
                }
                grid[r][c] = x;
                total += go(idx + 1, cells, grid, max, mu);
                grid[r][c] = 0;
            }
            total
        }
        go(0, &cells, &mut grid, max, mu)
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&part![2, 1], &part![1, 1, 1]), 2);
        assert_eq!(kostka(&part![3, 2], &part![3, 2]), 1);
        assert_eq!(kostka(&part![1, 1], &part![2]), 0);
        assert_eq!(kostka(&part![2], &part![1]), 0);
        assert_eq!(kostka(&part![], &part![]), 1);
    }

    #[test]
    fn kostka_matches_ssyt_enumeration() {
        for d in 0..=7 {
            let all = Partition::enumerate(d, None);
            for lambda in &all {
                for mu in &all {
                    assert_eq!(
                        kostka(lambda, mu),
                        kostka_by_enumeration(lambda, mu),
                        "K[{lambda:?}, {mu:?}]"
                    );
                }
            }
        }
    }

    #[test]
    fn kostka_is_unitriangular() {
        for d in 0..=8 {
            let all = Partition::enumerate(d, None);
            for lambda in &all {
                assert_eq!(kostka(lambda, lambda), 1);
                for mu in &all {
                    if !lambda.dominates(mu) {
                        assert_eq!(kostka(lambda, mu), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&part![1], &part![1], &part![2]), 1);
        assert_eq!(lr_coefficient(&part![1], &part![1], &part![1, 1]), 1);
        assert_eq!(lr_coefficient(&part![2, 1], &part![2, 1], &part![3, 2, 1]), 2);
        for mu in Partition::enumerate_up_to(5, None) {
            for lambda in Partition::enumerate(mu.size(), None) {
                let expected = u64::from(lambda == mu);
                assert_eq!(lr_coefficient(&mu, &part![], &lambda), expected);
            }
        }
    }

    #[test]
    fn lr_is_symmetric() {
        let all = Partition::enumerate_up_to(8, None);
        for mu in &all {
            for nu in &all {
                if mu.size() + nu.size() > 8 {
                    continue;
                }
                for lambda in Partition::enumerate(mu.size() + nu.size(), None) {
                    assert_eq!(
                        lr_coefficient(mu, nu, &lambda),
                        lr_coefficient(nu, mu, &lambda)
                    );
                }
            }
        }
    }

    #[test]
    fn product_examples() {
        let one_one = schur_product(&part![1], &part![1]);
        assert_eq!(
            one_one,
            FormalSum::from_terms([(part![2], 1), (part![1, 1], 1)]).unwrap()
        );
        assert_eq!(
            schur_product(&part![], &part![3, 1]),
            FormalSum::singleton(part![3, 1], 1)
        );
        assert_eq!(
            schur_product(&part![2], &part![1, 1]),
            FormalSum::from_terms([(part![3, 1], 1), (part![2, 1, 1], 1)]).unwrap()
        );
    }

    #[test]
    fn product_dimension_check() {
        // f^λ counts: Σ_λ c^λ_{μν} f^λ = C(|μ|+|ν|, |μ|) f^μ f^ν, with f from K_{λ,1^n}.
        let f = |p: &Partition| kostka(p, &Partition::new(vec![1; p.size()]).unwrap());
        let binom = |n: u64, k: u64| (1..=k).fold(1u64, |acc, i| acc * (n + 1 - i) / i);
        for mu in Partition::enumerate_up_to(4, None) {
            for nu in Partition::enumerate_up_to(4, None) {
                let lhs: u64 = schur_product(&mu, &nu)
                    .iter()
                    .map(|(l, &c)| c as u64 * f(l))
                    .sum();
                let rhs = binom((mu.size() + nu.size()) as u64, mu.size() as u64) * f(&mu) * f(&nu);
                assert_eq!(lhs, rhs, "{mu:?} * {nu:?}");
            }
        }
    }

    #[test]
    fn product_is_associative() {
        let all = Partition::enumerate_up_to(7, None);
        for a in &all {
            for b in &all {
                for c in &all {
                    if a.size() + b.size() + c.size() > 7 {
                        continue;
                    }
                    let ab = schur_product(a, b);
                    let bc = schur_product(b, c);
                    let left =
                        multiply_schur_sums(&ab, &FormalSum::singleton(c.clone(), 1)).unwrap();
                    let right =
                        multiply_schur_sums(&FormalSum::singleton(a.clone(), 1), &bc).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn transition_examples() {
        assert_eq!(schur_to_monomial(&part![1]), FormalSum::singleton(part![1], 1));
        assert_eq!(
            schur_to_monomial(&part![2]),
            FormalSum::from_terms([(part![2], 1), (part![1, 1], 1)]).unwrap()
        );
        assert_eq!(schur_to_monomial(&part![1, 1]), FormalSum::singleton(part![1, 1], 1));
        assert_eq!(
            monomial_to_schur(&FormalSum::singleton(part![1, 1], 1)).unwrap(),
            FormalSum::singleton(part![1, 1], 1)
        );
        assert_eq!(monomial_to_schur(&FormalSum::zero()).unwrap(), FormalSum::zero());
        assert_eq!(
            monomial_to_schur(&schur_to_monomial(&part![3, 1])).unwrap(),
            FormalSum::singleton(part![3, 1], 1)
        );
    }

    #[test]
    fn transition_leading_term_and_support() {
        for lambda in Partition::enumerate_up_to(8, None) {
            let m = schur_to_monomial(&lambda);
            assert_eq!(m.coeff(&lambda), 1);
            assert!(m.labels().all(|mu| lambda.dominates(mu)));
            assert!(m.iter().all(|(_, &c)| c > 0));
        }
    }

    fn small_sum() -> impl Strategy<Value = FormalSum> {
        let all = Partition::enumerate_up_to(8, None);
        proptest::collection::vec((0..all.len(), -5i64..=5), 0..6).prop_map(move |terms| {
            FormalSum::from_terms(terms.into_iter().map(|(i, c)| (all[i].clone(), c))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn basis_round_trip(f in small_sum()) {
            let m = schur_sum_to_monomial(&f).unwrap();
            prop_assert_eq!(monomial_to_schur(&m).unwrap(), f.clone());
            let s = monomial_to_schur(&f).unwrap();
            prop_assert_eq!(schur_sum_to_monomial(&s).unwrap(), f);
        }
    }
}
