use std::ops::ControlFlow;

/// Size-`k` distributions in lexicographic order of their count tuples,
/// subject to per-vertex caps and, optionally, squished threads (at most two
/// occupied thread vertices, and those adjacent on the thread).
#[derive(Clone, Debug)]
pub struct Candidates {
    total: u32,
    caps: Vec<u32>,
    /// `(thread, position)` for thread vertices.
    thread_of: Vec<Option<(usize, usize)>>,
    thread_count: usize,
    /// `suffix[i]`: sum of caps from `i` on, saturating.
    suffix: Vec<u64>,
}

impl Candidates {
    pub fn all(n: usize, total: u32) -> Self {
        Candidates::with_caps(vec![total; n], total)
    }

    pub fn with_caps(caps: Vec<u32>, total: u32) -> Self {
        let n = caps.len();
        let mut suffix = vec![0u64; n + 1];
        for i in (0..n).rev() {
            suffix[i] = suffix[i + 1].saturating_add(u64::from(caps[i]));
        }
        Candidates { total, caps, thread_of: vec![None; n], thread_count: 0, suffix }
    }

    /// Also require every listed thread (vertex paths) to be squished.
    pub fn squished_on(mut self, threads: &[Vec<usize>]) -> Self {
        for (t, path) in threads.iter().enumerate() {
            for (p, &v) in path.iter().enumerate() {
                self.thread_of[v] = Some((t, p));
            }
        }
        self.thread_count = threads.len();
        self
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn vertex_count(&self) -> usize {
        self.caps.len()
    }

    /// First vertex with a positive cap: the natural split point for
    /// parallel enumeration, and the values it can take.
    pub fn split(&self) -> Option<(usize, Vec<u32>)> {
        let i = self.caps.iter().position(|&c| c > 0)?;
        let lo = u64::from(self.total).saturating_sub(self.suffix[i + 1]) as u32;
        let hi = self.caps[i].min(self.total);
        (lo <= hi).then(|| (i, (lo..=hi).collect()))
    }

    /// Visits candidates in lexicographic order until `f` breaks.
    pub fn for_each<T>(&self, f: &mut dyn FnMut(&[u32]) -> ControlFlow<T>) -> Option<T> {
        self.run(None, f)
    }

    /// Like [`Candidates::for_each`], restricted to candidates with
    /// `value` at vertex `index`.
    pub fn for_each_fixed<T>(&self, index: usize, value: u32, f: &mut dyn FnMut(&[u32]) -> ControlFlow<T>) -> Option<T> {
        self.run(Some((index, value)), f)
    }

    fn run<T>(&self, fixed: Option<(usize, u32)>, f: &mut dyn FnMut(&[u32]) -> ControlFlow<T>) -> Option<T> {
        let mut buf = vec![0u32; self.caps.len()];
        let mut occ: Vec<Vec<usize>> = vec![Vec::new(); self.thread_count];
        match self.rec(0, self.total, fixed, &mut buf, &mut occ, f) {
            ControlFlow::Break(t) => Some(t),
            ControlFlow::Continue(()) => None,
        }
    }

    pub fn count(&self) -> u64 {
        let mut c = 0u64;
        self.for_each::<()>(&mut |_| {
            c += 1;
            ControlFlow::Continue(())
        });
        c
    }

    pub fn collect(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        self.for_each::<()>(&mut |d| {
            out.push(d.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    fn rec<T>(
        &self,
        i: usize,
        remaining: u32,
        fixed: Option<(usize, u32)>,
        buf: &mut Vec<u32>,
        occ: &mut Vec<Vec<usize>>,
        f: &mut dyn FnMut(&[u32]) -> ControlFlow<T>,
    ) -> ControlFlow<T> {
        if i == self.caps.len() {
            return if remaining == 0 { f(buf) } else { ControlFlow::Continue(()) };
        }
        if u64::from(remaining) > self.suffix[i] {
            return ControlFlow::Continue(());
        }
        let lo = u64::from(remaining).saturating_sub(self.suffix[i + 1]) as u32;
        let hi = self.caps[i].min(remaining);
        let (lo, hi) = match fixed {
            Some((j, v)) if j == i => (v.max(lo), v.min(hi)),
            _ => (lo, hi),
        };
        for val in lo..=hi {
            let mut pushed = None;
            if val > 0 {
                if let Some((t, p)) = self.thread_of[i] {
                    let o = &occ[t];
                    let ok = match o.len() {
                        0 => true,
                        1 => o[0].abs_diff(p) == 1,
                        _ => false,
                    };
                    if !ok {
                        // larger values are no better
                        break;
                    }
                    occ[t].push(p);
                    pushed = Some(t);
                }
            }
            buf[i] = val;
            let flow = self.rec(i + 1, remaining - val, fixed, buf, occ, f);
            if let Some(t) = pushed {
                occ[t].pop();
            }
            flow?;
        }
        buf[i] = 0;
        ControlFlow::Continue(())
    }
}
