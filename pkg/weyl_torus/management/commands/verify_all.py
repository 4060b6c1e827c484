from django.core.management.base import CommandError

from weyl_torus.exceptions import WeylTorusError
from weyl_torus.management.commands._base import (
    MISMATCH,
    VERIFICATION_ERRORS,
    VerificationCommand,
)
from weyl_torus.verification import SUITES, VERIFY_ALL_ORDER, SuiteResult


class Command(VerificationCommand):
    help = (
        "Run every verification suite in dependency order and report the "
        "aggregate outcome."
    )
    suites = VERIFY_ALL_ORDER

    def run_suites(self, context, config):
        results = []
        self.errors = []
        for name in self.suites:
            try:
                results.append(SUITES[name](context, config["side"]))
            except VERIFICATION_ERRORS as error:
                failed = SuiteResult(name, name)
                failed.check("suite", type(error).__name__, "pass", str(error))
                results.append(failed)
            except WeylTorusError as error:
                self.errors.append(f"{name}: {error}")
                results.append(SuiteResult(name, name, notes=[str(error)]))
        return results

    def finish(self, results):
        for result in results:
            status = (
                self.style.SUCCESS("passed")
                if result.passed
                else self.style.ERROR(f"{len(result.mismatches)} mismatches")
            )
            self.stderr.write(
                f"{result.name:<12} {result.elapsed:8.2f}s  {status}"
            )
        self.stderr.write(
            f"total        {sum(r.elapsed for r in results):8.2f}s"
        )
        if self.errors:
            raise CommandError("; ".join(self.errors))
        if any(not result.passed for result in results):
            for result in results:
                for mismatch in result.mismatches:
                    self.stderr.write(self.style.ERROR(str(mismatch)))
            raise CommandError(
                "verification mismatches in "
                + ", ".join(r.name for r in results if not r.passed),
                returncode=MISMATCH,
            )
        self.stderr.write(self.style.SUCCESS("All suites passed"))
