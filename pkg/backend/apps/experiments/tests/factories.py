"""
Model factories for experiment records.
"""

import factory

from apps.experiments.models import ExperimentRun, TaskRecord


class ExperimentRunFactory(factory.django.DjangoModelFactory):
    class Meta:
        model = ExperimentRun

    label = factory.Faker("sentence", nb_words=3)
    kind = ExperimentRun.Kind.BENCH
    status = ExperimentRun.Status.PENDING
    config = factory.LazyFunction(dict)


class TaskRecordFactory(factory.django.DjangoModelFactory):
    class Meta:
        model = TaskRecord

    run = factory.SubFactory(ExperimentRunFactory)
    task = "A→B"
    method = "dabls"
    seed = factory.Sequence(str)
    fraction = 0.1
    accuracy = factory.Faker("pyfloat", min_value=0, max_value=1)
    fit_seconds = factory.Faker("pyfloat", min_value=0, max_value=5)
    predict_seconds = factory.Faker("pyfloat", min_value=0, max_value=1)
