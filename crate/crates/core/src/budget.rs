//! Resource caps for enumerations and group closures.
//!
//! Every cap can be overridden through `SEPINV_*` environment variables so
//! scripted runs can raise limits without recompiling.

/// Caps applied by enumeration-heavy operations.
#[derive(Debug, Clone)]
pub struct Budgets {
    /// Maximal group order accepted by [`crate::group::GroupSpec`].
    pub group_order_cap: u64,
    /// Maximal number of candidate sequences an enumeration may visit.
    pub sequence_budget: u128,
    /// Maximal number of Galois orbits for stable-subset enumeration (2^orbits subsets).
    pub orbit_cap: usize,
    /// Maximal matrix-group closure size.
    pub closure_cap: usize,
    /// Maximal total degree for Reynolds-operator monomial scans.
    pub reynolds_degree_cap: u32,
    /// Maximal cyclotomic order n for which Phi_n is computed.
    pub cyclotomic_order_cap: u64,
    /// Worker threads for independent subset checks (1 = sequential).
    pub workers: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            group_order_cap: 10_000,
            sequence_budget: 5_000_000,
            orbit_cap: 20,
            closure_cap: 10_000,
            reynolds_degree_cap: 6,
            cyclotomic_order_cap: 1_000_000,
            workers: 1,
        }
    }
}

impl Budgets {
    /// Defaults with `SEPINV_*` environment overrides applied.
    pub fn from_env() -> Self {
        let mut b = Budgets::default();
        fn get<T: std::str::FromStr>(name: &str) -> Option<T> {
            std::env::var(name).ok().and_then(|v| v.parse().ok())
        }
        if let Some(v) = get("SEPINV_GROUP_CAP") {
            b.group_order_cap = v;
        }
        if let Some(v) = get("SEPINV_SEQ_BUDGET") {
            b.sequence_budget = v;
        }
        if let Some(v) = get("SEPINV_ORBIT_CAP") {
            b.orbit_cap = v;
        }
        if let Some(v) = get("SEPINV_CLOSURE_CAP") {
            b.closure_cap = v;
        }
        if let Some(v) = get("SEPINV_DEGREE_CAP") {
            b.reynolds_degree_cap = v;
        }
        if let Some(v) = get("SEPINV_CYCLOTOMIC_CAP") {
            b.cyclotomic_order_cap = v;
        }
        if let Some(v) = get("SEPINV_WORKERS") {
            b.workers = v;
        }
        b
    }
}
