use alloc::vec::Vec;

/// Lexicographic walk over the `k`-combinations of `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct Combination {
    n: usize,
    items: Vec<usize>,
}

impl Combination {
    /// Starts at `{0, .., k - 1}`. Requires `k <= n`.
    pub(crate) fn first(n: usize, k: usize) -> Self {
        debug_assert!(k <= n);
        Combination { n, items: (0..k).collect() }
    }

    pub(crate) fn items(&self) -> &[usize] {
        &self.items
    }

    /// Steps to the next combination; returns `false` and leaves the state
    /// untouched once the last one has been reached.
    pub(crate) fn advance(&mut self) -> bool {
        let k = self.items.len();
        let Some(pos) = (0..k).rev().find(|&i| self.items[i] < self.n - k + i) else {
            return false;
        };
        self.items[pos] += 1;
        for j in pos + 1..k {
            self.items[j] = self.items[j - 1] + 1;
        }
        true
    }

    pub(crate) fn reset(&mut self) {
        for (i, item) in self.items.iter_mut().enumerate() {
            *item = i;
        }
    }
}

/// Every `k`-combination of `0..n`, each as a sorted vector.
pub(crate) fn all_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c = Combination::first(n, k);
    loop {
        out.push(c.items().to_vec());
        if !c.advance() {
            return out;
        }
    }
}
