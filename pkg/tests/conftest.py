import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from plan_strings import ground_plan, parse_domain, parse_plan, parse_problem, weave

DATA = Path(__file__).parent / "data" / "blocksworld"


@pytest.fixture(scope="session")
def bw_texts():
    return {
        "domain": (DATA / "domain.pddl").read_text(encoding="utf-8"),
        "problem": (DATA / "problem.pddl").read_text(encoding="utf-8"),
        "plan": (DATA / "plan.txt").read_text(encoding="utf-8"),
    }


@pytest.fixture(scope="session")
def bw_domain(bw_texts):
    return parse_domain(bw_texts["domain"])


@pytest.fixture(scope="session")
def bw_problem(bw_texts, bw_domain):
    return parse_problem(bw_texts["problem"], bw_domain)


@pytest.fixture(scope="session")
def bw_plan(bw_texts, bw_domain, bw_problem):
    return parse_plan(bw_texts["plan"], bw_domain, bw_problem)


@pytest.fixture(scope="session")
def bw_woven(bw_domain, bw_problem, bw_plan):
    return weave(bw_problem, ground_plan(bw_domain, bw_plan))


@pytest.fixture
def data_dir():
    return DATA
