import asyncio
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional

from app.schemas.documents import ERROR, CaseResult, CheckReport, VerificationReport
from app.services.checks import CHECKS, case_label, run_case
from app.utils.errors import InvalidInput
from app.utils.logger import setup_logger
from config import settings

logger = setup_logger("verification_orchestrator")

ALL_CHECKS = "all"


class VerificationOrchestrator:
    """Run registered checks case by case and assemble a sorted report"""

    def __init__(self, jobs: Optional[int] = None):
        self.jobs = jobs or settings.default_jobs
        self.semaphore: Optional[asyncio.Semaphore] = None

    def resolve(self, check: str) -> List[str]:
        if check == ALL_CHECKS:
            return list(CHECKS)
        if check not in CHECKS:
            raise InvalidInput(f"unknown check {check!r}", {"allowed": sorted(CHECKS) + [ALL_CHECKS]})
        return [check]

    async def _run_one(self, executor: Optional[ProcessPoolExecutor], check: str, params) -> Dict:
        async with self.semaphore:
            try:
                if executor is None:
                    return run_case(check, params)
                loop = asyncio.get_running_loop()
                return await loop.run_in_executor(executor, run_case, check, params)
            except Exception as e:
                # worker-level failures; run_case already turns evaluation errors into verdicts
                label = case_label(params)
                logger.log_error("Case aborted", check=check, case=label, error=repr(e))
                detail = {"error": type(e).__name__, "message": str(e)}
                return CaseResult(case=label, verdict=ERROR, detail=detail).model_dump(mode="json")

    async def run_check(
        self,
        check: str,
        k: Optional[int] = None,
        max_degree: Optional[int] = None,
        executor: Optional[ProcessPoolExecutor] = None,
    ) -> CheckReport:
        definition = CHECKS[check]
        k = definition.default_k if k is None else k
        max_degree = definition.default_max_degree if max_degree is None else max_degree
        cases = definition.cases(k, max_degree)

        logger.log_info(
            "Starting check", check=check, kind=definition.kind, k=k, max_degree=max_degree, cases=len(cases)
        )
        results = await asyncio.gather(*(self._run_one(executor, check, params) for params in cases))

        report = CheckReport(
            check=check,
            kind=definition.kind,
            k=k,
            max_degree=max_degree,
            cases=sorted((CaseResult(**result) for result in results), key=lambda case: case.case),
        )
        counts: Dict[str, int] = {}
        for case in report.cases:
            counts[case.verdict] = counts.get(case.verdict, 0) + 1
        report.summary = {"cases": len(report.cases), **dict(sorted(counts.items()))}

        logger.log_info("Check completed", check=check, **report.summary)
        return report

    async def verify(self, check: str, k: Optional[int] = None, max_degree: Optional[int] = None) -> VerificationReport:
        names = self.resolve(check)
        self.semaphore = asyncio.Semaphore(self.jobs)
        executor = ProcessPoolExecutor(max_workers=self.jobs) if self.jobs > 1 else None
        try:
            reports = [await self.run_check(name, k, max_degree, executor) for name in names]
        finally:
            if executor is not None:
                executor.shutdown()

        return VerificationReport(
            checks=reports,
            theorem_failures=sum(1 for report in reports if report.theorem_failed),
            conjecture_counterexamples=sum(report.counterexamples for report in reports),
        )
