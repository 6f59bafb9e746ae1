//! Three places where the empty-product convention quietly does real work:
//! the determinant of a 0×0 diagonal matrix, the Kaplan–Meier product-limit
//! survival estimator, and partial products of sequences that eventually
//! stop moving.
//!
//! Survival arithmetic is exact: times, factors `1 − d_j/n_j`, and curve
//! values are all big rationals, so the product-limit identity
//! `Ŝ(t) = Π_{t_j ≤ t} (1 − d_j/n_j)` holds on the nose, not up to
//! rounding.

use core::fmt::Debug;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::fold::{fprod, FiniteIndexSet, FnFamily};
use crate::monoid::MulMonoid;

/// The determinant of the diagonal matrix with the given diagonal: the
/// product of the entries, so the 0×0 matrix has determinant one. Splitting
/// the diagonal anywhere splits the determinant into a product.
pub fn det_diag<T>(diagonal: &[T]) -> T
where
    T: One + Clone + PartialEq + Debug,
{
    let family = FnFamily(|i: &usize| diagonal.get(*i).cloned());
    let indices: FiniteIndexSet<usize> = (0..diagonal.len()).collect();
    fprod(&family, &indices, &MulMonoid::new()).expect("every index is within the slice")
}

/// One observed subject: a time and whether the subject experienced the
/// event (`true`) or was censored (`false`) at that time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurvivalRecord {
    pub time: BigRational,
    pub event: bool,
}

/// One row of a risk table: at event time `time`, `events` subjects had the
/// event out of `at_risk` subjects still under observation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiskRow {
    pub time: BigRational,
    pub events: u64,
    pub at_risk: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurvivalError {
    /// No record marks an event, so there are no event times and no rows.
    #[error("no record marks an event")]
    NoEvents,
    /// Observation times must be non-negative; `index` is the offending
    /// record's position.
    #[error("record {index} has a negative time")]
    NegativeTime { index: usize },
    /// Row times must be strictly increasing; `index` is the first row out
    /// of order.
    #[error("row {index} does not increase the event time")]
    TimesOutOfOrder { index: usize },
    /// Every row must record at least one event.
    #[error("row {index} records no events")]
    RowWithoutEvents { index: usize },
    #[error("row {index} has more events than subjects at risk")]
    MoreEventsThanAtRisk { index: usize },
    /// The at-risk count can only shrink over time.
    #[error("row {index} has more subjects at risk than the previous row")]
    AtRiskIncreased { index: usize },
}

/// A validated risk table: strictly increasing event times, at least one
/// event per row, never more events than subjects at risk, and an at-risk
/// count that does not grow. An empty table is valid and yields the
/// constant curve 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiskTable {
    rows: Vec<RiskRow>,
}

impl RiskTable {
    pub fn new(rows: Vec<RiskRow>) -> Result<Self, SurvivalError> {
        for (index, row) in rows.iter().enumerate() {
            if row.events == 0 {
                return Err(SurvivalError::RowWithoutEvents { index });
            }
            if row.events > row.at_risk {
                return Err(SurvivalError::MoreEventsThanAtRisk { index });
            }
            if index > 0 {
                if row.time <= rows[index - 1].time {
                    return Err(SurvivalError::TimesOutOfOrder { index });
                }
                if row.at_risk > rows[index - 1].at_risk {
                    return Err(SurvivalError::AtRiskIncreased { index });
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[RiskRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The survival factor `1 − d_j/n_j` of row `j`, an exact rational.
    pub fn factor(&self, j: usize) -> Option<BigRational> {
        let row = self.rows.get(j)?;
        let hazard = BigRational::new(BigInt::from(row.events), BigInt::from(row.at_risk));
        Some(BigRational::one() - hazard)
    }
}

/// Aggregates raw records into a risk table. The event times are the
/// distinct times carrying at least one event, ascending; `d_j` counts the
/// events at `t_j` and `n_j` counts every record — event or censored —
/// with time `≥ t_j`. Ties between events and censorings at the same time
/// therefore keep the censored subjects at risk: events are processed
/// before censorings, the standard product-limit convention.
pub fn build_risk_table(records: &[SurvivalRecord]) -> Result<RiskTable, SurvivalError> {
    for (index, record) in records.iter().enumerate() {
        if record.time < BigRational::zero() {
            return Err(SurvivalError::NegativeTime { index });
        }
    }
    let event_times: BTreeSet<&BigRational> = records
        .iter()
        .filter(|r| r.event)
        .map(|r| &r.time)
        .collect();
    if event_times.is_empty() {
        return Err(SurvivalError::NoEvents);
    }
    let mut rows = Vec::with_capacity(event_times.len());
    for time in event_times {
        let events = records.iter().filter(|r| r.event && r.time == *time).count() as u64;
        let at_risk = records.iter().filter(|r| r.time >= *time).count() as u64;
        rows.push(RiskRow { time: time.clone(), events, at_risk });
    }
    RiskTable::new(rows)
}

/// A right-continuous step function: value 1 before the first step, then
/// the recorded value from each step time onward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurvivalCurve {
    steps: Vec<(BigRational, BigRational)>,
}

impl SurvivalCurve {
    /// The steps `(t_j, Ŝ(t_j))` in ascending time order.
    pub fn steps(&self) -> &[(BigRational, BigRational)] {
        &self.steps
    }

    /// `Ŝ(t)`: the value at the greatest step time `≤ t`, or 1 when `t`
    /// lies before every step.
    pub fn survival_at(&self, t: &BigRational) -> BigRational {
        self.steps
            .iter()
            .rev()
            .find(|(step_time, _)| step_time <= t)
            .map(|(_, value)| value.clone())
            .unwrap_or_else(BigRational::one)
    }
}

/// The Kaplan–Meier product-limit estimator of the table: starting from
/// `Ŝ = 1`, each row multiplies in its factor `1 − d_j/n_j`, so
/// `Ŝ(t) = Π_{t_j ≤ t} (1 − d_j/n_j)` exactly. Table validation already
/// guarantees every factor lies in `[0, 1]`, hence the curve is
/// nonincreasing from 1.
pub fn kaplan_meier(table: &RiskTable) -> SurvivalCurve {
    let mut steps = Vec::with_capacity(table.len());
    let mut running = BigRational::one();
    for j in 0..table.len() {
        running *= table.factor(j).expect("row index is in range");
        steps.push((table.rows()[j].time.clone(), running.clone()));
    }
    SurvivalCurve { steps }
}

/// The partial products `P_k = Π_{n=1..k} (1 + a_n)` of a sequence of
/// terms, with `P_0 = 1` as the empty product. Built by
/// [`partial_products`], which also checks the block identity in debug
/// builds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialProductSeq<T> {
    terms: Vec<T>,
    products: Vec<T>,
}

impl<T> PartialProductSeq<T>
where
    T: Zero + One + Clone + PartialEq + Debug,
{
    pub fn terms(&self) -> &[T] {
        &self.terms
    }

    /// `P_0, …, P_N`; one entry longer than the terms.
    pub fn products(&self) -> &[T] {
        &self.products
    }

    /// `P_N`, the full product.
    pub fn last(&self) -> &T {
        self.products.last().expect("P_0 is always present")
    }

    /// Verifies `P_N = P_{m−1} · Π_{n=m..N} (1 + a_n)` for every
    /// `1 ≤ m ≤ N`, computing each block as a set-indexed product.
    pub fn block_identity_holds(&self) -> bool {
        let shifted = FnFamily(|n: &usize| {
            self.terms.get(n - 1).map(|a| T::one() + a.clone())
        });
        let total = self.terms.len();
        (1..=total).all(|m| {
            let block: FiniteIndexSet<usize> = (m..=total).collect();
            let tail = fprod(&shifted, &block, &MulMonoid::new())
                .expect("block indices are within the terms");
            self.products[total] == self.products[m - 1].clone() * tail
        })
    }
}

/// Computes the partial products of `terms`: `P_0 = 1` and
/// `P_k = P_{k−1} · (1 + a_k)`. Debug builds assert the block identity —
/// any failure would mean the running product and the set-indexed product
/// have diverged.
pub fn partial_products<T>(terms: &[T]) -> PartialProductSeq<T>
where
    T: Zero + One + Clone + PartialEq + Debug,
{
    let mut products = Vec::with_capacity(terms.len() + 1);
    products.push(T::one());
    for term in terms {
        let next = products.last().expect("P_0 is present").clone() * (T::one() + term.clone());
        products.push(next);
    }
    let seq = PartialProductSeq { terms: terms.to_vec(), products };
    debug_assert!(seq.block_identity_holds());
    seq
}

/// A term declared zero past the tail start was not.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("term {index} is nonzero although the tail is declared zero after term {tail_start}")]
pub struct NonzeroTailError {
    /// 1-based position of the offending term.
    pub index: usize,
    pub tail_start: usize,
}

/// The limit of the infinite product `Π (1 + a_n)` for a sequence whose
/// terms vanish after position `zero_tail_start` (1-based; 0 means all
/// terms vanish): the partial products are constant from there on, so the
/// limit is plainly `P_{zero_tail_start}`. The vanishing claim is
/// validated against the supplied terms.
pub fn eventually_constant_limit<T>(
    terms: &[T],
    zero_tail_start: usize,
) -> Result<T, NonzeroTailError>
where
    T: Zero + One + Clone + PartialEq + Debug,
{
    for (offset, term) in terms.iter().enumerate().skip(zero_tail_start) {
        if !term.is_zero() {
            return Err(NonzeroTailError { index: offset + 1, tail_start: zero_tail_start });
        }
    }
    let stable = zero_tail_start.min(terms.len());
    Ok(partial_products(terms).products()[stable].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn empty_diagonal_has_determinant_one() {
        assert_eq!(det_diag::<i64>(&[]), 1);
        assert_eq!(det_diag::<BigRational>(&[]), rat(1));
    }

    #[test]
    fn small_diagonals_multiply_out() {
        assert_eq!(det_diag(&[2i64, 3]), 6);
        assert_eq!(det_diag(&[4i64, 0, 7]), 0);
    }

    #[test]
    fn determinant_splits_across_concatenation() {
        let left = [2i64, 5];
        let right = [3i64, 1, 7];
        let mut whole = Vec::new();
        whole.extend_from_slice(&left);
        whole.extend_from_slice(&right);
        assert_eq!(det_diag(&whole), det_diag(&left) * det_diag(&right));
    }

    fn four_records() -> Vec<SurvivalRecord> {
        // times [1, 2, 2, 3], flags [event, event, censored, event]
        [(1, true), (2, true), (2, false), (3, true)]
            .into_iter()
            .map(|(t, event)| SurvivalRecord { time: rat(t), event })
            .collect()
    }

    #[test]
    fn risk_table_counts_match_the_hand_tally() {
        let table = build_risk_table(&four_records()).unwrap();
        let expected = [
            RiskRow { time: rat(1), events: 1, at_risk: 4 },
            RiskRow { time: rat(2), events: 1, at_risk: 3 },
            RiskRow { time: rat(3), events: 1, at_risk: 1 },
        ];
        assert_eq!(table.rows(), expected);
    }

    #[test]
    fn single_event_record_is_its_own_table() {
        let records = [SurvivalRecord { time: rat(5), event: true }];
        let table = build_risk_table(&records).unwrap();
        assert_eq!(table.rows(), [RiskRow { time: rat(5), events: 1, at_risk: 1 }]);
    }

    #[test]
    fn event_free_inputs_are_rejected() {
        let censored = [SurvivalRecord { time: rat(2), event: false }];
        assert_eq!(build_risk_table(&censored), Err(SurvivalError::NoEvents));
        assert_eq!(build_risk_table(&[]), Err(SurvivalError::NoEvents));
    }

    #[test]
    fn negative_times_are_rejected() {
        let records = [
            SurvivalRecord { time: rat(1), event: true },
            SurvivalRecord { time: rat(-2), event: true },
        ];
        assert_eq!(
            build_risk_table(&records),
            Err(SurvivalError::NegativeTime { index: 1 })
        );
    }

    #[test]
    fn table_validation_rejects_each_broken_invariant() {
        let row = |t: i64, d: u64, n: u64| RiskRow { time: rat(t), events: d, at_risk: n };
        assert_eq!(
            RiskTable::new(vec![row(2, 1, 4), row(1, 1, 3)]),
            Err(SurvivalError::TimesOutOfOrder { index: 1 })
        );
        assert_eq!(
            RiskTable::new(vec![row(1, 0, 4)]),
            Err(SurvivalError::RowWithoutEvents { index: 0 })
        );
        assert_eq!(
            RiskTable::new(vec![row(1, 5, 4)]),
            Err(SurvivalError::MoreEventsThanAtRisk { index: 0 })
        );
        assert_eq!(
            RiskTable::new(vec![row(1, 1, 4), row(2, 1, 5)]),
            Err(SurvivalError::AtRiskIncreased { index: 1 })
        );
        assert!(RiskTable::new(Vec::new()).unwrap().is_empty());
    }

    #[test]
    fn kaplan_meier_reproduces_the_hand_curve() {
        let table = build_risk_table(&four_records()).unwrap();
        let curve = kaplan_meier(&table);
        let expected = [
            (rat(1), ratio(3, 4)),
            (rat(2), ratio(1, 2)),
            (rat(3), rat(0)),
        ];
        assert_eq!(curve.steps(), expected);
    }

    #[test]
    fn survival_lookup_is_a_right_continuous_step_function() {
        let curve = kaplan_meier(&build_risk_table(&four_records()).unwrap());
        assert_eq!(curve.survival_at(&rat(0)), rat(1));
        assert_eq!(curve.survival_at(&ratio(1, 2)), rat(1));
        assert_eq!(curve.survival_at(&rat(1)), ratio(3, 4));
        assert_eq!(curve.survival_at(&ratio(5, 2)), ratio(1, 2));
        assert_eq!(curve.survival_at(&rat(3)), rat(0));
        assert_eq!(curve.survival_at(&rat(100)), rat(0));
    }

    #[test]
    fn each_step_multiplies_in_one_factor() {
        let table = build_risk_table(&four_records()).unwrap();
        let curve = kaplan_meier(&table);
        let mut previous = rat(1);
        for (j, (_, value)) in curve.steps().iter().enumerate() {
            assert_eq!(*value, &previous * table.factor(j).unwrap());
            previous = value.clone();
        }
    }

    #[test]
    fn empty_table_gives_the_constant_curve() {
        let curve = kaplan_meier(&RiskTable::new(Vec::new()).unwrap());
        assert!(curve.steps().is_empty());
        assert_eq!(curve.survival_at(&rat(7)), rat(1));
    }

    #[test]
    fn no_terms_no_products_beyond_one() {
        let seq = partial_products::<i64>(&[]);
        assert_eq!(seq.products(), [1]);
        assert_eq!(*seq.last(), 1);
    }

    #[test]
    fn zero_terms_leave_the_product_at_one() {
        let seq = partial_products(&[0i64, 0, 0]);
        assert_eq!(seq.products(), [1, 1, 1, 1]);
    }

    #[test]
    fn doubling_terms_double_the_product() {
        let seq = partial_products(&[1i64, 1]);
        assert_eq!(seq.products(), [1, 2, 4]);
    }

    #[test]
    fn rational_terms_stay_exact() {
        let seq = partial_products(&[ratio(1, 2), ratio(-1, 3)]);
        assert_eq!(seq.products(), [rat(1), ratio(3, 2), rat(1)]);
        assert!(seq.block_identity_holds());
    }

    #[test]
    fn limit_of_the_all_zero_sequence_is_one() {
        assert_eq!(eventually_constant_limit(&[0i64, 0, 0], 0), Ok(1));
        assert_eq!(eventually_constant_limit::<i64>(&[], 0), Ok(1));
    }

    #[test]
    fn limit_stops_at_the_declared_tail() {
        assert_eq!(eventually_constant_limit(&[1i64, 0, 0], 1), Ok(2));
        // a tail start beyond the terms means the whole finite product
        assert_eq!(eventually_constant_limit(&[1i64, 1], 10), Ok(4));
    }

    #[test]
    fn lying_about_the_tail_is_caught() {
        assert_eq!(
            eventually_constant_limit(&[1i64, 3, 0], 1),
            Err(NonzeroTailError { index: 2, tail_start: 1 })
        );
    }
}
