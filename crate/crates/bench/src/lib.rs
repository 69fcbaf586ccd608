// SPDX-License-Identifier: Apache-2.0

//! Criterion benchmarks for codebound; see `benches/`.
