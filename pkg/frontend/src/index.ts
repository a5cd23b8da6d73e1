export { DEFAULT_ALIASES, OBJECT_LABELS, ObjectLabel, UnknownLabelError, normalizeLabelToken, resolveLabel } from "./labels";
export { DetectionRecord, Eye, formatDetectionFile, formatDetectionLine, validateBbox } from "./records";
export {
  ConvertOptions,
  DEFAULT_EYE_RULE,
  EyeNamingRule,
  MissingEyeSuffixError,
  RawViaRegion,
  ViaFormatError,
  ViaRegion,
  convertViaFile,
  parseViaExport,
  polygonBbox,
  splitEyeSuffix,
  viaToDetections,
} from "./via";
export {
  ChannelRange,
  ColorRanges,
  DEFAULT_MIN_AREA_PX,
  Rgba,
  ThresholdOptions,
  UnreadableImageError,
  parseColorRanges,
  readPng,
  thresholdDetect,
  thresholdImage,
} from "./threshold";
export { main } from "./cli";
