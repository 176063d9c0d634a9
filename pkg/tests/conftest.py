from __future__ import annotations

import pytest

from prioritree import build_matrix, judgment_from_token, load_nhs_model
from prioritree.core import DecisionModel, PairwiseMatrix

import oracle


def matrix_from_tokens(ids, upper_tokens) -> PairwiseMatrix:
    """Build a PairwiseMatrix from {(id_a, id_b): token} upper-triangle data."""
    index = {eid: k for k, eid in enumerate(ids)}
    return build_matrix(
        ids,
        [(index[a], index[b], judgment_from_token(tok)) for (a, b), tok in upper_tokens.items()],
    )


def alternatives_matrix(criterion: str) -> PairwiseMatrix:
    sp, si, pi = oracle.ALTERNATIVE_UPPER[criterion]
    return matrix_from_tokens(
        oracle.ALTERNATIVES,
        {("SAAS", "PAAS"): sp, ("SAAS", "IAAS"): si, ("PAAS", "IAAS"): pi},
    )


@pytest.fixture(scope="session")
def nhs_model() -> DecisionModel:
    return load_nhs_model()


@pytest.fixture(scope="session")
def criteria_matrix() -> PairwiseMatrix:
    return matrix_from_tokens(oracle.CRITERIA, oracle.CRITERIA_UPPER)


@pytest.fixture(scope="session")
def functionality_matrix() -> PairwiseMatrix:
    return alternatives_matrix("Fun")


@pytest.fixture(scope="session")
def usability_matrix() -> PairwiseMatrix:
    return alternatives_matrix("Usa")


@pytest.fixture(scope="session")
def architecture_matrix() -> PairwiseMatrix:
    return alternatives_matrix("Arc")


@pytest.fixture(scope="session")
def vendor_matrix() -> PairwiseMatrix:
    return alternatives_matrix("Ven")


@pytest.fixture(scope="session")
def volume_matrix() -> PairwiseMatrix:
    return alternatives_matrix("Vol")
