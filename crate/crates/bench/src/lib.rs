// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! Benchmarks live in `benches/`; see `cargo bench -p qec-bench`.
