//! Published test-set MSEs for twenty S&P 500 constituents over daily data
//! from January 2009 to January 2012 (70/30 chronological split).
//!
//! Shipped for documentation and order-of-magnitude sanity checks only; the
//! exact data snapshots behind these numbers are not available.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub company: &'static str,
    pub ticker: &'static str,
    pub lssvm_abc: f64,
    pub lssvm_pso: f64,
    pub lssvm: f64,
    pub ann: f64,
}

const fn row(company: &'static str, ticker: &'static str, abc: f64, pso: f64, lssvm: f64, ann: f64) -> ReferenceRow {
    ReferenceRow { company, ticker, lssvm_abc: abc, lssvm_pso: pso, lssvm, ann }
}

// The MMM row repeats the Life Technologies values in the source table.
pub const REFERENCE_MSE: [ReferenceRow; 20] = [
    row("Adobe", "ADBE", 0.5310, 0.5317, 0.5529, 0.6979),
    row("Amazon", "AMZN", 4.5286, 4.5315, 6.1981, 22.015),
    row("Apple", "AAPL", 5.5915, 5.5924, 9.4863, 143.01),
    row("Oracle", "ORCL", 0.6320, 0.6314, 0.6807, 0.7598),
    row("Cisco", "CSCO", 0.3115, 0.3111, 0.3623, 0.3929),
    row("HP", "HPQ", 0.7727, 0.7725, 0.9752, 1.3146),
    row("American Express", "AXP", 0.7904, 0.7905, 0.8761, 1.5116),
    row("Bank of New York", "BK", 0.4841, 0.4839, 0.9394, 0.9646),
    row("Coca-Cola", "KO", 0.6809, 0.6823, 0.8096, 2.0560),
    row("Honeywell", "HON", 0.9563, 0.9574, 1.3371, 2.1853),
    row("Hospira", "HSP", 0.8695, 0.8694, 0.8936, 1.5162),
    row("Life Technologies", "LIFE", 0.7718, 0.7713, 1.0195, 2.4162),
    row("Exxon Mobil", "XOM", 1.0997, 1.1000, 1.3016, 1.3080),
    row("AT&T", "T", 0.2916, 0.2911, 0.3684, 0.4241),
    row("FMC", "FMC", 1.5881, 1.5881, 1.7529, 3.0843),
    row("Duke Energy", "DUK", 0.1710, 0.1735, 0.3709, 0.5897),
    row("Ford", "F", 0.2473, 0.2472, 0.2660, 0.2628),
    row("FedEx", "FDX", 1.4948, 1.4948, 1.5285, 1.9454),
    row("3M", "MMM", 0.7718, 0.7713, 1.0195, 2.4162),
    row("PPL", "PPL", 0.2920, 0.2919, 0.2907, 0.3073),
];

/// Looks up a row by ticker or company name, case-insensitively.
pub fn reference_row(symbol: &str) -> Option<&'static ReferenceRow> {
    REFERENCE_MSE
        .iter()
        .find(|r| r.ticker.eq_ignore_ascii_case(symbol) || r.company.eq_ignore_ascii_case(symbol))
}
