// API payload shapes served by the recommendation service.

export interface SoilProfile {
  ph_low: number;
  ph_high: number;
  phosphorus: string;
  potassium: string;
  nitrogen: string | null;
}

export interface Zone {
  division: string;
  district: string;
  sub_district: string;
  latitude: number;
  longitude: number;
  aez_number: number;
  aez_name: string;
  met_station: string;
  soil: SoilProfile;
}

export interface MonthlyWeather {
  temperature: number[];
  rainfall: number[];
  humidity: number[];
}

export interface CropAssessment {
  crop: string;
  predicted_production: number;
  diseases: string[];
  disease_count: number;
}

export interface Recommendation {
  zone: Zone;
  weather: MonthlyWeather;
  ranked: CropAssessment[];
}

export interface RecommendRequest {
  lat: number;
  lon: number;
  year: number;
  exclude_crops: string[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  stage?: string | null;
}

export interface GeoPoint {
  lat: number;
  lon: number;
}
